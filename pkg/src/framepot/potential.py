"""p-frame potential, classical lower bounds and the exponent regimes.

For ``N = d+1`` unit vectors in ``R^d`` and ``0 < p < 2`` the minimal
potential is ``(k+1) k^(1-p)``, attained by ``L_k^d``, where ``k`` is the
regime containing ``p``. Regime boundaries are

    p_k = ln((k+2)/k) / ln((k+1)/k),   k = 1..d-1,

with ``p_0 = 0`` and ``p_d = 2``. The dual thresholds

    a_k = ln((k+2)/k) / (2 ln((k+2)/(k+1)))

satisfy ``a_k = 1/2 + 1/(2 (p_k - 1))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Configuration

ZERO_INNER_PRODUCT = 1e-15
BOUNDARY_TOL = 1e-12


def _vectors(X):
    return X.vectors if isinstance(X, Configuration) else np.asarray(X, dtype=float)


def _off_diagonal_abs(X):
    v = _vectors(X)
    g = np.abs(v @ v.T)
    np.fill_diagonal(g, 0.0)
    return g


def frame_potential(X, p: float) -> float:
    """Sum of ``|<x_i, x_j>|^p`` over ordered pairs ``i != j``.

    Every unordered pair is counted twice. Inner products with magnitude at
    most ``1e-15`` contribute nothing, including for ``p < 1``.
    """
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")
    g = _off_diagonal_abs(X)
    mask = g > ZERO_INNER_PRODUCT
    return float(np.sum(g[mask] ** p))


def coherence(X) -> float:
    """Largest off-diagonal ``|<x_i, x_j>|``."""
    g = _off_diagonal_abs(X)
    if g.shape[0] < 2:
        raise ValueError("coherence needs at least two vectors")
    return float(min(g.max(), 1.0))


def sidelnikov_bound(N: int, d: int, k: int) -> float:
    """Lower bound on the ``2k``-frame potential of ``N`` unit vectors in ``R^d``.

    ``N^2 (1*3*...*(2k-1)) / (d (d+2) ... (d+2k-2)) - N``. Exact when
    ``X u -X`` is a spherical ``2k``-design; for ``k = 1`` any unit-norm
    tight frame attains it.
    """
    if N < 1 or d < 1 or k < 1:
        raise ValueError("N, d, k must all be >= 1")
    ratio = 1.0
    for i in range(k):
        ratio *= (2 * i + 1) / (d + 2 * i)
    return N * N * ratio - N


def ehler_okoudjou_bound(N: int, d: int, p: float) -> float:
    """``N (N-1) ((N-d) / (d (N-1)))^(p/2)``; a valid lower bound for ``p > 2``.

    Equality holds exactly for equiangular tight frames. Evaluated for any
    ``p > 0``; see :func:`bound_report` for validity flags.
    """
    if N < d:
        raise ValueError(f"need N >= d, got N={N}, d={d}")
    if N == 1:
        return 0.0
    return N * (N - 1) * ((N - d) / (d * (N - 1))) ** (p / 2)


def glazyrin_bound(N: int, d: int, p: float) -> float:
    """``2 (N-d) / (p^(p/2) (2-p)^((2-p)/2))``, valid for ``1 <= p <= 2``.

    At ``p = 2`` the factor ``(2-p)^((2-p)/2)`` takes its limit value 1.
    """
    if not 0 < p <= 2:
        raise ValueError(f"glazyrin_bound needs 0 < p <= 2, got {p}")
    tail = 1.0 if p == 2 else (2 - p) ** ((2 - p) / 2)
    return 2 * (N - d) / (p ** (p / 2) * tail)


@dataclass(frozen=True)
class RegimeTable:
    """Exponent boundaries ``p_0..p_d`` and dual thresholds ``a_0..a_d``."""

    d: int
    boundaries: np.ndarray
    alpha_thresholds: np.ndarray

    def interval(self, k: int) -> tuple[float, float]:
        """Open exponent interval ``(p_{k-1}, p_k)`` on which ``L_k^d`` wins."""
        return float(self.boundaries[k - 1]), float(self.boundaries[k])

    def alpha_interval(self, k: int) -> tuple[float, float]:
        return float(self.alpha_thresholds[k]), float(self.alpha_thresholds[k - 1])


def regime_exponent(k: int) -> float:
    """Boundary exponent ``p_k`` between the ``L_k`` and ``L_{k+1}`` regimes."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return (math.log(k + 2) - math.log(k)) / (math.log(k + 1) - math.log(k))


def alpha_threshold(k: int) -> float:
    """Threshold ``a_k`` at which the simplex maximizer switches support size."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return 0.5 * (math.log(k + 2) - math.log(k)) / (math.log(k + 2) - math.log(k + 1))


def regime_boundaries(d: int) -> RegimeTable:
    if d < 1:
        raise ValueError("d must be >= 1")
    p = [0.0] + [regime_exponent(k) for k in range(1, d)] + [2.0]
    a = [math.inf] + [alpha_threshold(k) for k in range(1, d)] + [1.0]
    return RegimeTable(d, np.array(p), np.array(a))


@dataclass(frozen=True)
class Regime:
    """Regime of an exponent: ``(k,)`` inside ``(p_{k-1}, p_k)`` or ``(k, k+1)`` at ``p_k``."""

    ks: tuple[int, ...]

    @property
    def k(self) -> int:
        return self.ks[0]

    @property
    def is_boundary(self) -> bool:
        return len(self.ks) == 2


def regime_index(d: int, p: float) -> Regime:
    if not 0 < p < 2:
        raise ValueError(f"p must lie in (0, 2), got {p}")
    table = regime_boundaries(d)
    b = table.boundaries
    for k in range(1, d):
        if abs(p - b[k]) <= BOUNDARY_TOL:
            return Regime((k, k + 1))
    for k in range(1, d + 1):
        if b[k - 1] < p < b[k]:
            return Regime((k,))
    raise AssertionError("unreachable: regimes cover (0, 2)")


def lifted_etf_potential(k: int, p: float) -> float:
    """Closed-form ``FP_p(L_k^d) = (k+1) k^(1-p)``, independent of ``d``."""
    return (k + 1) * k ** (1.0 - p)


def theorem_min_value(d: int, p: float) -> tuple[Regime, float]:
    """Minimal p-frame potential over ``d+1`` unit vectors in ``R^d``."""
    if d < 2:
        raise ValueError("d must be >= 2")
    regime = regime_index(d, p)
    return regime, lifted_etf_potential(regime.k, p)


def alpha_of_p(p: float) -> float:
    """Half the Hölder conjugate of ``p``: ``1/2 + 1/(2 (p-1))``."""
    if not 1 < p < 2:
        raise ValueError(f"alpha_of_p needs 1 < p < 2, got {p}")
    return 0.5 + 0.5 / (p - 1.0)


def bound_report(N: int, d: int, p: float) -> list[dict]:
    """All classical bounds at ``(N, d, p)`` as JSON-ready records.

    Each record carries ``valid`` telling whether the bound is proven in
    that exponent range. The Sidelnikov bound is only listed for even
    integer ``p``.
    """
    records = []
    if p == int(p) and int(p) % 2 == 0 and p > 0:
        k = int(p) // 2
        records.append(dict(bound_name="sidelnikov", family=None, d=d, k=k, p=p,
                            value=sidelnikov_bound(N, d, k), valid=True))
    if N >= d:
        records.append(dict(bound_name="ehler_okoudjou", family=None, d=d, k=None, p=p,
                            value=ehler_okoudjou_bound(N, d, p), valid=p > 2))
    if 0 < p <= 2:
        records.append(dict(bound_name="glazyrin", family=None, d=d, k=None, p=p,
                            value=glazyrin_bound(N, d, p), valid=1 <= p <= 2))
    if N == d + 1 and d >= 2 and 0 < p < 2:
        regime, value = theorem_min_value(d, p)
        records.append(dict(bound_name="theorem_min", family="lifted-etf", d=d, k=regime.k,
                            p=p, value=value, valid=True))
    return records
