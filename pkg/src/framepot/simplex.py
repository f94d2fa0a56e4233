"""Maximizing ``M_alpha(z) = sum_{i != j} z_i^alpha z_j^alpha`` over the simplex.

For ``alpha > 1`` the maximizers are uniform distributions on ``k+1``
coordinates, with ``k`` selected by the thresholds ``a_k``
(:func:`framepot.potential.alpha_threshold`). This module provides the
objective, its two-level restriction ``f``, the auxiliary polynomials ``h``
and ``h1`` governing the critical points of ``f``, the comparison function
``H(x) = x^(1-2 alpha) (x-1)``, a closed-form maximizer and an independent
brute-force maximizer used as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .potential import alpha_threshold

SIMPLEX_TOL = 1e-12
THRESHOLD_TOL = 1e-12


def _check_alpha(alpha):
    if not alpha > 1:
        raise ValueError(f"alpha must be > 1, got {alpha}")


@dataclass(frozen=True)
class SimplexPoint:
    """Nonnegative vector summing to one."""

    z: np.ndarray

    def __post_init__(self):
        z = np.array(self.z, dtype=float, copy=True)
        if z.ndim != 1 or z.size < 1:
            raise ValueError("simplex point must be a non-empty vector")
        if np.any(z < 0):
            raise ValueError("simplex point has negative coordinates")
        if abs(z.sum() - 1.0) > SIMPLEX_TOL:
            raise ValueError(f"simplex point sums to {z.sum()!r}, expected 1")
        z.flags.writeable = False
        object.__setattr__(self, "z", z)

    @classmethod
    def uniform(cls, support: int, size: int) -> "SimplexPoint":
        """Mass ``1/support`` on the first ``support`` of ``size`` coordinates."""
        if not 1 <= support <= size:
            raise ValueError("support must lie in 1..size")
        z = np.zeros(size)
        z[:support] = 1.0 / support
        return cls(z)

    def support_size(self, tol: float = 1e-6) -> int:
        return int(np.sum(self.z > tol))


@dataclass(frozen=True)
class TwoLevelPoint:
    """``m1`` coordinates equal to ``t`` and ``d+1-m1`` equal to ``s``."""

    m1: int
    t: float
    d: int

    def __post_init__(self):
        if not 1 <= self.m1 <= (self.d + 1) / 2:
            raise ValueError(f"m1 must lie in [1, (d+1)/2], got m1={self.m1}, d={self.d}")
        if not -1e-15 <= self.t <= 1.0 / self.m1 + 1e-15:
            raise ValueError(f"t must lie in [0, 1/m1], got {self.t}")

    @property
    def m2(self) -> int:
        return self.d + 1 - self.m1

    @property
    def s(self) -> float:
        return max((1.0 - self.m1 * self.t) / self.m2, 0.0)

    def expand(self) -> SimplexPoint:
        z = np.concatenate([np.full(self.m1, self.t), np.full(self.m2, self.s)])
        z = np.clip(z, 0.0, None)
        return SimplexPoint(z / z.sum())


def m_objective(z, alpha: float) -> float:
    """``(sum z_i^alpha)^2 - sum z_i^(2 alpha)``."""
    _check_alpha(alpha)
    z = z.z if isinstance(z, SimplexPoint) else np.asarray(z, dtype=float)
    za = z ** alpha
    return float(za.sum() ** 2 - np.sum(za * za))


def f_restriction(tl: TwoLevelPoint, alpha: float, d: int | None = None) -> float:
    """``M_alpha`` evaluated on a two-level point, in closed form."""
    _check_alpha(alpha)
    if d is not None and d != tl.d:
        raise ValueError("d does not match the two-level point")
    m1, m2, t, s = tl.m1, tl.m2, tl.t, tl.s
    return (m1 * t ** alpha + m2 * s ** alpha) ** 2 - (m1 * t ** (2 * alpha) + m2 * s ** (2 * alpha))


def h_poly(x: float, m1: int, m2: int, alpha: float) -> float:
    """``(m2-1) x^(4a-2) - m2 x^(2a) + m1 x^(2a-2) - (m1-1)``.

    Its sign at ``v = sqrt(s/t)`` is the sign of ``d f / d theta`` under
    ``t = cos^2(theta)/m1``.
    """
    _check_alpha(alpha)
    a = alpha
    return (m2 - 1) * x ** (4 * a - 2) - m2 * x ** (2 * a) + m1 * x ** (2 * a - 2) - (m1 - 1)


def h1_poly(x: float, m1: int, m2: int, alpha: float) -> float:
    """``h'(x) / x^(2a-3) = (4a-2)(m2-1) x^(2a) - 2a m2 x^2 + (2a-2) m1``."""
    _check_alpha(alpha)
    a = alpha
    return (4 * a - 2) * (m2 - 1) * x ** (2 * a) - 2 * a * m2 * x ** 2 + (2 * a - 2) * m1


def h1_min_location(m1: int, m2: int, alpha: float) -> float:
    """Unique minimizer ``x0`` of ``h1`` on ``(0, inf)``."""
    _check_alpha(alpha)
    if m2 < 2:
        raise ValueError("h1 has no interior minimum for m2 < 2")
    return (m2 / ((2 * alpha - 1) * (m2 - 1))) ** (1.0 / (2 * alpha - 2))


@dataclass(frozen=True)
class HRoots:
    """Positive zeros of ``h1`` (equivalently critical points of ``h``).

    ``monotonicity`` lists the sign of ``h'`` on the consecutive open
    intervals cut out by ``roots``; ``double`` is set when ``h1`` only
    touches zero at its minimum.
    """

    roots: tuple[float, ...]
    monotonicity: tuple[str, ...]
    x0: float
    double: bool = False


def find_h_roots(m1: int, m2: int, alpha: float, xtol: float = 1e-12) -> HRoots:
    """Locate the zeros of ``h1`` on ``(0, inf)``.

    ``h1`` decreases on ``(0, x0)`` and increases on ``(x0, inf)`` with
    ``h1(0) > 0``, so there are two simple roots, one double root at ``x0``
    or none. Each simple root is bracketed on its monotone branch.
    """
    x0 = h1_min_location(m1, m2, alpha)
    fmin = h1_poly(x0, m1, m2, alpha)
    scale = max((4 * alpha - 2) * (m2 - 1) * x0 ** (2 * alpha), 2 * alpha * m2 * x0 ** 2,
                (2 * alpha - 2) * m1)
    if abs(fmin) <= 1e-12 * scale:
        return HRoots((x0,), ("+", "+"), x0, double=True)
    if fmin > 0:
        return HRoots((), ("+",), x0)
    f = lambda x: h1_poly(x, m1, m2, alpha)  # noqa: E731
    left = brentq(f, 0.0, x0, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=500)
    hi = 2 * x0
    while f(hi) <= 0:
        hi *= 2
    right = brentq(f, x0, hi, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=500)
    return HRoots((left, right), ("+", "-", "+"), x0)


def comparison_H(x: float, alpha: float) -> float:
    """``x^(1-2 alpha) (x-1)``; equals ``M_alpha`` of the uniform point on ``x`` coordinates."""
    _check_alpha(alpha)
    return x ** (1 - 2 * alpha) * (x - 1)


def comparison_H_peak(alpha: float) -> float:
    """Location ``1 + 1/(2 alpha - 2)`` of the maximum of :func:`comparison_H`."""
    _check_alpha(alpha)
    return 1 + 1 / (2 * alpha - 2)


@dataclass(frozen=True)
class SimplexMaximum:
    points: tuple[SimplexPoint, ...]
    value: float

    @property
    def supports(self) -> tuple[int, ...]:
        return tuple(pt.support_size() for pt in self.points)


def maximize_m_analytic(d: int, alpha: float) -> SimplexMaximum:
    """Global maximizers of ``M_alpha`` on the ``(d+1)``-simplex.

    For ``alpha`` in ``(a_k, a_{k-1})`` the unique maximizer (up to
    permutation) is uniform on ``k+1`` coordinates with value ``H(k+1)``.
    At ``alpha = a_k`` (within ``THRESHOLD_TOL``) both the ``k+1`` and the
    ``k+2`` uniform points are returned.
    """
    _check_alpha(alpha)
    if d < 1:
        raise ValueError("d must be >= 1")
    for k in range(1, d):
        if abs(alpha - alpha_threshold(k)) <= THRESHOLD_TOL:
            pts = (SimplexPoint.uniform(k + 1, d + 1), SimplexPoint.uniform(k + 2, d + 1))
            return SimplexMaximum(pts, max(comparison_H(k + 1, alpha), comparison_H(k + 2, alpha)))
    values = [comparison_H(k + 1, alpha) for k in range(1, d + 1)]
    k = int(np.argmax(values)) + 1
    return SimplexMaximum((SimplexPoint.uniform(k + 1, d + 1),), values[k - 1])


def project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto ``{z >= 0, sum z = 1}`` (sort-based)."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    ind = np.arange(1, v.size + 1)
    rho = np.count_nonzero(u - css / ind > 0)
    theta = css[rho - 1] / rho
    return np.maximum(v - theta, 0.0)


def _m_gradient(z, alpha):
    za = z ** alpha
    return 2 * alpha * z ** (alpha - 1) * (za.sum() - za)


def projected_ascent(z0, alpha, step0=0.1, max_iters=10_000, rtol=1e-12):
    """Projected gradient ascent of ``M_alpha`` with backtracking."""
    z = project_simplex(np.asarray(z0, dtype=float))
    val = m_objective(z, alpha)
    for _ in range(max_iters):
        g = _m_gradient(z, alpha)
        step = step0
        while step > 1e-16:
            cand = project_simplex(z + step * g)
            cval = m_objective(cand, alpha)
            if cval >= val:
                break
            step *= 0.5
        else:
            break
        change = np.linalg.norm(cand - z) / max(np.linalg.norm(z), 1e-300)
        z, val = cand, cval
        if change < rtol:
            break
    return z, val


def _two_level_candidates(d, alpha, grid_n):
    best = []
    for m1 in range(1, (d + 1) // 2 + 1):
        ts = np.linspace(0.0, 1.0 / m1, grid_n)
        f = lambda t: f_restriction(TwoLevelPoint(m1, min(max(t, 0.0), 1.0 / m1), d), alpha)  # noqa: E731
        vals = np.array([f(t) for t in ts])
        for i in range(grid_n):
            left = vals[i - 1] if i > 0 else -np.inf
            right = vals[i + 1] if i < grid_n - 1 else -np.inf
            if vals[i] < left or vals[i] < right:
                continue
            t_best, v_best = ts[i], vals[i]
            lo, hi = ts[max(i - 1, 0)], ts[min(i + 1, grid_n - 1)]
            res = minimize_scalar(lambda t: -f(t), bounds=(lo, hi), method="bounded",
                                  options={"xatol": 1e-12})
            if -res.fun > v_best:
                t_best, v_best = float(res.x), -float(res.fun)
            best.append((v_best, TwoLevelPoint(m1, t_best, d).expand()))
    return best


def maximize_m_brute(d: int, alpha: float, grid_n: int = 200, restarts: int = 20,
                     seed: int = 0) -> tuple[SimplexPoint, float]:
    """Numerical maximum of ``M_alpha`` on the ``(d+1)``-simplex.

    Best of an exhaustive scan over two-level points (every ``m1``, a grid
    of ``t`` refined by bounded scalar search) and projected gradient ascents
    from random starting points. Uses no knowledge of the thresholds.
    """
    _check_alpha(alpha)
    if grid_n < 50:
        raise ValueError("grid_n must be >= 50")
    if d == 1:
        cands = [(m_objective([0.5, 0.5], alpha), SimplexPoint([0.5, 0.5]))]
    else:
        cands = [(v, pt) for v, pt in _two_level_candidates(d, alpha, grid_n)]
    rng = np.random.default_rng(seed)
    for _ in range(restarts):
        z0 = rng.dirichlet(np.ones(d + 1))
        z, val = projected_ascent(z0, alpha)
        cands.append((val, SimplexPoint(z / z.sum())))
    val, pt = max(cands, key=lambda c: c[0])
    order = np.argsort(-pt.z, kind="stable")
    return SimplexPoint(pt.z[order]), float(val)


def unimodal(seq) -> bool:
    """True when consecutive differences change sign from + to - at most once."""
    diffs = np.sign(np.diff(np.asarray(seq, dtype=float)))
    diffs = diffs[diffs != 0]
    return not np.any((diffs[:-1] < 0) & (diffs[1:] > 0))


def threshold_alpha_grid(d: int) -> list[float]:
    """Probe values of alpha: generic points plus every ``a_k`` and ``a_k +- 0.01``."""
    grid = [1.01, 1.1, 1.5, 2.0, 3.0]
    if d >= 2:
        grid.append(1 + 1 / (d - 1))
    for k in range(1, d):
        a = alpha_threshold(k)
        grid += [a - 0.01, a, a + 0.01]
    return sorted(a for a in set(grid) if a > 1)


def alpha_thresholds(d: int) -> list[float]:
    return [alpha_threshold(k) for k in range(1, d)]


__all__ = [
    "SimplexPoint", "TwoLevelPoint", "HRoots", "SimplexMaximum",
    "m_objective", "f_restriction", "h_poly", "h1_poly", "h1_min_location",
    "find_h_roots", "comparison_H", "comparison_H_peak", "maximize_m_analytic",
    "maximize_m_brute", "project_simplex", "projected_ascent", "unimodal",
    "threshold_alpha_grid", "alpha_thresholds",
]
