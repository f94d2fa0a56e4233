import numpy as np
import pytest

from framepot.core import Configuration, lifted_etf, random_configuration
from framepot.optimizer import (
    MinimizeOptions,
    classify_minimizer,
    descend,
    minimize_fp,
    random_starts,
    smoothed_fp_and_gradient,
    verify_proof_chain,
)
from framepot.potential import frame_potential, regime_boundaries


def fd_gradient(X, p, eps, h=1e-6):
    """Central differences of the smoothed potential composed with row normalization."""
    def f(V):
        return smoothed_fp_and_gradient(V / np.linalg.norm(V, axis=1, keepdims=True), p, eps)[0]
    g = np.zeros_like(X)
    for idx in np.ndindex(*X.shape):
        Xp, Xm = X.copy(), X.copy()
        Xp[idx] += h
        Xm[idx] -= h
        g[idx] = (f(Xp) - f(Xm)) / (2 * h)
    return g


def test_eps_zero_is_potential(rng):
    for _ in range(10):
        X = random_configuration(5, 4, rng)
        for p in (0.5, 1.0, 1.7):
            v, _ = smoothed_fp_and_gradient(X, p, 0.0)
            assert v == pytest.approx(frame_potential(X, p), rel=1e-14)


def test_gradient_matches_finite_differences(rng):
    worst = 0.0
    for _ in range(20):
        d = int(rng.integers(2, 6))
        X = random_configuration(d + 1, d, rng).vectors
        p = rng.uniform(0.3, 2.0)
        _, g = smoothed_fp_and_gradient(X, p, 1e-3)
        fd = fd_gradient(X, p, 1e-3)
        worst = max(worst, np.max(np.abs(g - fd)) / np.max(np.abs(fd)))
    assert worst <= 1e-5


@pytest.mark.parametrize("d", range(2, 7))
def test_lifted_etf_is_stationary(d):
    for k in range(1, d + 1):
        for p in (1.2, 1.6, 1.95):
            _, g = smoothed_fp_and_gradient(lifted_etf(d, k), p, 0.0)
            assert np.linalg.norm(g) <= 1e-8


def test_gradient_is_tangent(rng):
    X = random_configuration(6, 5, rng).vectors
    _, g = smoothed_fp_and_gradient(X, 1.4, 1e-2)
    np.testing.assert_allclose(np.sum(g * X, axis=1), 0.0, atol=1e-13)


def test_smoothing_dominates_and_is_monotone(rng):
    for _ in range(20):
        X = random_configuration(5, 4, rng)
        p = rng.uniform(0.2, 2.0)
        fp = frame_potential(X, p)
        n = X.n
        prev = -np.inf
        for eps in (1e-6, 1e-4, 1e-2, 1e-1):
            v, _ = smoothed_fp_and_gradient(X, p, eps)
            raw = v + n * (n - 1) * eps ** p
            assert raw >= fp - 1e-12
            assert raw >= prev
            prev = raw


def test_descent_is_monotone_within_each_eps():
    opts = MinimizeOptions(restarts=8, max_iters=3000, seed=3)
    X0 = random_starts(8, 4, 3, seed=3)
    _, _, _, hist = descend(X0, 1.4, opts, trace=True)
    assert hist
    for eps, idx, before, after in hist:
        assert np.all(after <= before + 1e-15 * np.maximum(1.0, np.abs(before)))


def test_random_starts_are_reproducible():
    a = random_starts(5, 4, 3, seed=11)
    b = random_starts(5, 4, 3, seed=11)
    np.testing.assert_array_equal(a, b)
    np.testing.assert_allclose(np.linalg.norm(a, axis=-1), 1.0)


@pytest.mark.parametrize("d", range(2, 9))
def test_classification_soundness(d):
    for k in range(1, d + 1):
        assert classify_minimizer(lifted_etf(d, k), 1e-8) == k


def test_classify_examples(rng):
    assert classify_minimizer(lifted_etf(5, 3)) == 3
    assert classify_minimizer(random_configuration(5, 4, rng)) is None
    X = lifted_etf(4, 2).vectors
    noise = 1e-3 * rng.standard_normal(X.shape)
    noise -= np.sum(noise * X, axis=1, keepdims=True) * X
    Y = Configuration.from_raw(X + noise)
    assert classify_minimizer(Y, 1e-2) == 2
    assert classify_minimizer(Y, 1e-8) is None


def test_classify_rejects_non_clique():
    # two disjoint repeated pairs: two entries at 1 but not a 2-clique
    X = Configuration(np.array([[1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 1, 0.0]]))
    assert classify_minimizer(X) is None


def test_options_validation():
    with pytest.raises(ValueError):
        MinimizeOptions(restarts=0)
    with pytest.raises(ValueError):
        MinimizeOptions(eps_decay=1.5)
    with pytest.raises(ValueError):
        MinimizeOptions(smoothing_eps=0.0)
    with pytest.raises(ValueError):
        MinimizeOptions(reanneal=-1)


def test_minimize_rejects_bad_p():
    with pytest.raises(ValueError):
        minimize_fp(3, 2.0)
    with pytest.raises(ValueError):
        minimize_fp(1, 1.0)


@pytest.mark.parametrize("d,p,k,value", [
    (2, 1.0, 1, 2.0),
    (2, 1.8, 2, 3 * 2 ** -0.8),
    (4, 0.4, 1, 2.0),
])
def test_minimize_examples(d, p, k, value):
    rep = minimize_fp(d, p, MinimizeOptions(restarts=50 if d == 2 else 100, seed=1))
    assert not rep.used_fallback
    assert abs(rep.descent_value - value) / value <= 1e-6
    assert rep.rel_gap <= 1e-6
    assert rep.descent_classified_as == k
    assert rep.value >= rep.theoretical - 1e-9


def test_minimize_is_deterministic():
    opts = MinimizeOptions(restarts=10, seed=5, max_iters=5000)
    a = minimize_fp(3, 1.3, opts)
    b = minimize_fp(3, 1.3, opts)
    assert abs(a.value - b.value) <= 1e-8
    np.testing.assert_array_equal(a.best.vectors, b.best.vectors)


def test_report_serializes():
    rep = minimize_fp(2, 1.2, MinimizeOptions(restarts=4, max_iters=3000))
    out = rep.to_dict()
    assert out["best"]["n"] == 3 and len(out["best"]["vectors"]) == 3
    assert out["rel_gap"] == rep.rel_gap


@pytest.mark.parametrize("d", range(2, 7))
def test_proof_chain_tight_on_lifted_etf(d):
    t = regime_boundaries(d)
    for k in range(1, d + 1):
        lo, hi = t.interval(k)
        lo = max(lo, 1.0)
        if hi <= lo:
            continue
        for p in np.linspace(lo, hi, 5)[1:-1]:
            rep = verify_proof_chain(lifted_etf(d, k), p)
            assert rep.holds(1e-9)
            assert rep.tight(1e-9), rep.slacks


def test_proof_chain_wrong_regime_is_loose():
    rep = verify_proof_chain(lifted_etf(3, 1), 1.9)
    assert rep.holds(1e-9)
    assert rep.potential > rep.final_bound + 1e-3
    assert rep.slacks["simplex"] > 0 or rep.slacks["potential"] > 0


def test_proof_chain_random(rng):
    for _ in range(100):
        d = int(rng.integers(2, 6))
        X = random_configuration(d + 1, d, rng)
        for p in (1.2, 1.5, 1.9):
            assert verify_proof_chain(X, p).holds(1e-9)


def test_first_inequality_many_samples(rng):
    for _ in range(1000):
        d = int(rng.integers(2, 6))
        rep = verify_proof_chain(random_configuration(d + 1, d, rng), 1.5)
        assert rep.slacks["unit"] >= -1e-9


def test_proof_chain_preconditions():
    with pytest.raises(ValueError):
        verify_proof_chain(Configuration(np.eye(3)), 1.5)
    with pytest.raises(ValueError):
        verify_proof_chain(lifted_etf(3, 2), 0.9)
