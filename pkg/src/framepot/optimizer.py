"""Numerical minimization of the p-frame potential over ``d+1`` unit vectors.

Restarts run as one batched Riemannian gradient descent on the product of
spheres. The nonsmooth terms ``|t|^p`` are replaced by
``(t^2 + eps^2)^(p/2)`` and ``eps`` is annealed geometrically down to a
floor, so iterates settle onto the many exactly-zero inner products that
minimizers have. Step sizes come from Armijo backtracking on the retraction
"step, then renormalize rows".
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .core import Configuration, gram, lifted_etf, null_space_vector
from .potential import (
    ZERO_INNER_PRODUCT,
    alpha_of_p,
    frame_potential,
    theorem_min_value,
)
from .simplex import maximize_m_analytic, m_objective

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MinimizeOptions:
    """Descent settings.

    ``reanneal`` extra passes of the full ``eps`` schedule are run from the
    final iterates when ``p < 1``. At the floor the zero inner products are
    so stiff that line searches stop moving along the remaining directions;
    restarting at ``smoothing_eps`` releases them.
    """

    restarts: int = 100
    max_iters: int = 20_000
    smoothing_eps: float = 1e-2
    eps_decay: float = 0.5
    eps_floor: float = 1e-9
    eps_every: int = 200
    step_init: float = 0.1
    grad_tol: float = 1e-9
    ftol: float = 1e-15
    stall_iters: int = 50
    armijo_c: float = 1e-4
    backtrack: float = 0.5
    classify_tol: float = 1e-6
    seed: int = 0
    reanneal: int = 1

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.reanneal < 0:
            raise ValueError("reanneal must be >= 0")
        if not self.smoothing_eps > 0 or not self.eps_floor > 0:
            raise ValueError("smoothing_eps and eps_floor must be positive")
        if not 0 < self.eps_decay < 1:
            raise ValueError("eps_decay must lie in (0, 1)")
        if not 0 < self.backtrack < 1:
            raise ValueError("backtrack must lie in (0, 1)")


@dataclass
class OptimizationReport:
    d: int
    p: float
    best: Configuration
    value: float
    theoretical: float
    rel_gap: float
    classified_as: int | None
    restarts_converged: int
    iterations_total: int
    descent_value: float
    descent_classified_as: int | None
    used_fallback: bool
    best_restart: int
    values: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "p": self.p,
            "value": self.value,
            "theoretical": self.theoretical,
            "rel_gap": self.rel_gap,
            "classified_as": self.classified_as,
            "restarts_converged": self.restarts_converged,
            "iterations_total": self.iterations_total,
            "descent_value": self.descent_value,
            "descent_classified_as": self.descent_classified_as,
            "used_fallback": self.used_fallback,
            "best_restart": self.best_restart,
            "best": {"d": self.best.dim, "n": self.best.n,
                     "vectors": self.best.vectors.tolist()},
        }


def _off_diagonal(X):
    n = X.shape[-2]
    G = X @ np.swapaxes(X, -1, -2)
    idx = np.arange(n)
    G[..., idx, idx] = 0.0
    return G


def _batch_value_grad(X, p, eps, with_grad=True):
    """Smoothed potential and projected gradient for a batch ``(R, N, d)``."""
    n = X.shape[-2]
    G = _off_diagonal(X)
    idx = np.arange(n)
    if eps > 0:
        base = G * G + eps * eps
        phi = base ** (p / 2)
        value = phi.sum(axis=(-2, -1)) - n * eps ** p - n * (n - 1) * eps ** p
        if not with_grad:
            return value, None
        dphi = p * G * (phi / base)
    else:
        a = np.abs(G)
        live = a > ZERO_INNER_PRODUCT
        safe = np.where(live, a, 1.0)
        powered = np.where(live, safe ** p, 0.0)
        value = powered.sum(axis=(-2, -1))
        if not with_grad:
            return value, None
        dphi = np.where(live, p * np.sign(G) * powered / safe, 0.0)
    dphi[..., idx, idx] = 0.0
    egrad = 2.0 * dphi @ X
    rgrad = egrad - np.sum(egrad * X, axis=-1, keepdims=True) * X
    return value, rgrad


def _batch_value(X, p, eps):
    return _batch_value_grad(X, p, eps, with_grad=False)[0]


def smoothed_fp_and_gradient(X, p: float, eps: float) -> tuple[float, np.ndarray]:
    """Smoothed potential and its Riemannian gradient on the product of spheres.

    Value is ``sum_{i != j} (<x_i,x_j>^2 + eps^2)^(p/2) - N(N-1) eps^p``,
    which tends to the p-frame potential as ``eps -> 0``. Each gradient row
    has its component along ``x_i`` removed.
    """
    if not 0 < p <= 2:
        raise ValueError(f"p must lie in (0, 2], got {p}")
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    v = X.vectors if isinstance(X, Configuration) else np.asarray(X, dtype=float)
    value, grad = _batch_value_grad(v[None], p, eps)
    return float(value[0]), grad[0]


def _retract(X):
    return X / np.linalg.norm(X, axis=-1, keepdims=True)


def descend(X0, p, opts: MinimizeOptions, trace: bool = False):
    """Batched annealed gradient descent from starting points ``X0`` of shape ``(R, N, d)``.

    ``eps`` is multiplied by ``opts.eps_decay`` every ``opts.eps_every``
    iterations, or as soon as every running restart has stalled at the
    current level, until it reaches ``opts.eps_floor``. A restart stops once
    its projected gradient norm drops below ``grad_tol`` at the floor, or
    when it has stalled there for ``stall_iters`` iterations.

    Returns final iterates, per-restart iteration counts, convergence flags
    and, when ``trace`` is set, a list of ``(eps, indices, values_before,
    values_after)`` per iteration.
    """
    X = _retract(np.array(X0, dtype=float))
    R = X.shape[0]
    eps = opts.smoothing_eps
    step = np.full(R, opts.step_init)
    active = np.ones(R, dtype=bool)
    converged = np.zeros(R, dtype=bool)
    iters = np.zeros(R, dtype=int)
    stall = np.zeros(R, dtype=int)
    history = [] if trace else None
    val, grad = _batch_value_grad(X, p, eps)
    since_decay = 0
    for _ in range(opts.max_iters):
        resting = stall >= opts.stall_iters
        if eps > opts.eps_floor and (since_decay >= opts.eps_every or np.all(resting[active])):
            eps = max(eps * opts.eps_decay, opts.eps_floor)
            val, grad = _batch_value_grad(X, p, eps)
            stall[:] = 0
            resting[:] = False
            since_decay = 0
        at_floor = eps <= opts.eps_floor
        gnorm2 = np.sum(grad * grad, axis=(-2, -1))
        if at_floor:
            done = active & ((np.sqrt(gnorm2) <= opts.grad_tol) | resting)
            converged |= done
            active &= ~done
        if not active.any():
            break
        idx = np.flatnonzero(active & ~resting)
        since_decay += 1
        Xa, va, ga, g2 = X[idx], val[idx], grad[idx], gnorm2[idx]
        s = np.minimum(step[idx] * 2.0, 1.0)
        accepted = np.zeros(idx.size, dtype=bool)
        newX = Xa.copy()
        newv = va.copy()
        pending = np.ones(idx.size, dtype=bool)
        for _ in range(60):
            if not pending.any():
                break
            pi = np.flatnonzero(pending)
            cand = _retract(Xa[pi] - s[pi, None, None] * ga[pi])
            cv = _batch_value(cand, p, eps)
            ok = cv <= va[pi] - opts.armijo_c * s[pi] * g2[pi]
            good = pi[ok]
            newX[good], newv[good] = cand[ok], cv[ok]
            accepted[good] = True
            pending[good] = False
            s[pending] *= opts.backtrack
            # steps below rounding level cannot change the iterate
            pending &= s * np.sqrt(g2) > 1e-16
        step[idx] = np.where(accepted, s, step[idx])
        rel = np.abs(va - newv) / np.maximum(np.abs(va), 1.0)
        stall[idx] = np.where(~accepted | (rel <= opts.ftol), stall[idx] + 1, 0)
        X[idx] = newX
        iters[idx] += 1
        nv, ng = _batch_value_grad(X[idx], p, eps)
        val[idx], grad[idx] = nv, ng
        if trace:
            history.append((eps, idx.copy(), va.copy(), nv.copy()))
    return X, iters, converged, history


def classify_minimizer(X, tol: float = 1e-6) -> int | None:
    """Return ``k`` when ``X`` has the Gram magnitude pattern of ``L_k^d``.

    The off-diagonal magnitudes must contain exactly ``k(k+1)/2`` entries
    within ``tol`` of ``1/k`` that form a clique on ``k+1`` indices, with
    every other entry below ``tol``.
    """
    v = X.vectors if isinstance(X, Configuration) else np.asarray(X, dtype=float)
    n = v.shape[0]
    g = np.abs(v @ v.T)
    np.fill_diagonal(g, 0.0)
    for k in range(1, n):
        hit = np.abs(g - 1.0 / k) <= tol
        np.fill_diagonal(hit, False)
        rest = ~hit
        np.fill_diagonal(rest, False)
        if np.sum(hit) != k * (k + 1) or np.any(g[rest] >= tol):
            continue
        members = np.flatnonzero(hit.any(axis=1))
        if members.size != k + 1:
            continue
        block = hit[np.ix_(members, members)]
        if np.all(block | np.eye(k + 1, dtype=bool)):
            return k
    return None


def random_starts(restarts, n, d, seed):
    """Normalized Gaussian rows from a counter-based (Philox) generator."""
    rng = np.random.Generator(np.random.Philox(seed))
    return _retract(rng.standard_normal((restarts, n, d)))


def minimize_fp(d: int, p: float, opts: MinimizeOptions | None = None) -> OptimizationReport:
    """Minimize the p-frame potential of ``d+1`` unit vectors in ``R^d``.

    Runs ``opts.restarts`` descents from random starts and keeps the best
    by exact potential (ties go to the lowest restart index). The known
    optimal lifted ETF is also evaluated; if it beats the descent result the
    report falls back to it and sets ``used_fallback``.
    """
    opts = opts or MinimizeOptions()
    if d < 2:
        raise ValueError("d must be >= 2")
    if not 0 < p < 2:
        raise ValueError(f"p must lie in (0, 2), got {p}")
    n = d + 1
    regime, theoretical = theorem_min_value(d, p)
    X0 = random_starts(opts.restarts, n, d, opts.seed)
    X, iters, converged, _ = descend(X0, p, opts)
    values = np.array([frame_potential(x, p) for x in X])
    for _ in range(opts.reanneal if p < 1 else 0):
        X2, it2, conv2, _ = descend(X, p, opts)
        v2 = np.array([frame_potential(x, p) for x in X2])
        better = v2 < values
        X[better], values[better], converged[better] = X2[better], v2[better], conv2[better]
        iters += it2
    values = values.tolist()
    best_i = int(np.argmin(values))
    descent_best = Configuration.from_raw(X[best_i])
    descent_value = frame_potential(descent_best, p)
    descent_class = classify_minimizer(descent_best, opts.classify_tol)

    fallback = lifted_etf(d, regime.k)
    fallback_value = frame_potential(fallback, p)
    used_fallback = fallback_value < descent_value - 1e-12 * max(1.0, fallback_value)
    best, value = (fallback, fallback_value) if used_fallback else (descent_best, descent_value)
    classified = classify_minimizer(best, opts.classify_tol)
    rel_gap = (value - theoretical) / max(theoretical, 1e-300)
    log.debug("d=%d p=%.6f value=%.15g theoretical=%.15g gap=%.3e", d, p, value, theoretical, rel_gap)
    return OptimizationReport(
        d=d, p=p, best=best, value=value, theoretical=theoretical, rel_gap=rel_gap,
        classified_as=classified, restarts_converged=int(converged.sum()),
        iterations_total=int(iters.sum()), descent_value=descent_value,
        descent_classified_as=descent_class, used_fallback=bool(used_fallback),
        best_restart=best_i, values=values,
    )


@dataclass
class ChainReport:
    """Quantities and slacks of the null-vector / Hölder lower-bound chain.

    With ``S = sum_{i!=j} |g_ij| |y_i| |y_j|``, ``q = p/(p-1)`` and
    ``z_i = y_i^2``:

    * ``unit = S - 1``
    * ``holder = FP^(1/p) M_alpha(z)^(1/q) - S``
    * ``potential = FP - M_alpha(z)^(-p/q)``
    * ``simplex = M_alpha(z)^(-p/q) - (max M_alpha)^(-p/q)``
    """

    p: float
    q: float
    alpha: float
    y: np.ndarray
    weighted_sum: float
    potential: float
    m_value: float
    m_max: float
    chain_bound: float
    final_bound: float
    slacks: dict

    def holds(self, tol: float = 1e-9) -> bool:
        return all(s >= -tol for s in self.slacks.values())

    def tight(self, tol: float = 1e-9) -> bool:
        return all(abs(s) <= tol for s in self.slacks.values())

    def to_dict(self) -> dict:
        return {
            "p": self.p, "q": self.q, "alpha": self.alpha, "y": self.y.tolist(),
            "weighted_sum": self.weighted_sum, "potential": self.potential,
            "m_value": self.m_value, "m_max": self.m_max,
            "chain_bound": self.chain_bound, "final_bound": self.final_bound,
            "slacks": dict(self.slacks),
        }


def verify_proof_chain(X, p: float) -> ChainReport:
    """Evaluate each inequality of the lower-bound argument on ``X``.

    Requires ``N = d+1`` and ``1 < p < 2``. The null vector ``y`` of the Gram
    matrix gives ``1 <= S``; Hölder bounds ``S``; rearranging gives a lower
    bound on the potential through ``M_alpha``, ``alpha = q/2``, which is in
    turn bounded using the global maximum of ``M_alpha`` on the simplex.
    """
    if not isinstance(X, Configuration):
        X = Configuration(X)
    if X.n != X.dim + 1:
        raise ValueError("verify_proof_chain needs N = d + 1")
    alpha = alpha_of_p(p)
    q = 2 * alpha
    G = gram(X)
    y = null_space_vector(G).coords
    g = np.abs(G.entries)
    np.fill_diagonal(g, 0.0)
    ay = np.abs(y)
    weighted = float(ay @ g @ ay)
    fp = frame_potential(X, p)
    z = y * y
    z = z / z.sum()
    m_val = m_objective(z, alpha)
    m_max = maximize_m_analytic(X.dim, alpha).value
    chain_bound = m_val ** (-p / q) if m_val > 0 else math.inf
    final_bound = m_max ** (-p / q)
    slacks = {
        "unit": weighted - 1.0,
        "holder": fp ** (1 / p) * m_val ** (1 / q) - weighted,
        "potential": fp - chain_bound,
        "simplex": chain_bound - final_bound,
    }
    return ChainReport(p, q, alpha, y, weighted, fp, m_val, m_max, chain_bound, final_bound, slacks)
