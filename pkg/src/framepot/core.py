"""Unit-vector configurations, Gram matrices and the lifted ETF family.

A configuration is an ordered set of ``N`` unit vectors in ``R^d`` stored
row-wise. The lifted ETF ``L_k^d`` consists of a regular simplex of ``k+1``
vectors spanning a ``k``-dimensional subspace, completed by an orthonormal
basis of the complement.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

UNIT_NORM_TOL = 1e-10
PSD_TOL = 1e-9
RANK_TOL = 1e-8
NULLSPACE_TOL = 1e-8
SYMMETRY_TOL = 1e-12


class NonUnitRowError(ValueError):
    """Raised when a configuration row does not have unit Euclidean norm."""

    def __init__(self, index, norm):
        self.index = int(index)
        self.norm = float(norm)
        super().__init__(f"row {self.index} has norm {self.norm!r}, expected 1")


class RankError(ValueError):
    """Raised when a Gram matrix has the wrong numerical rank."""


def _frozen(a):
    a = np.array(a, dtype=float, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Configuration:
    """Ordered set of ``N`` unit vectors in ``R^d``; row ``i`` is ``x_i``."""

    vectors: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=float)
        if v.ndim != 2 or v.shape[0] < 1 or v.shape[1] < 1:
            raise ValueError(f"vectors must be a non-empty N x d matrix, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("vectors contain non-finite entries")
        norms = np.linalg.norm(v, axis=1)
        bad = np.flatnonzero(np.abs(norms - 1.0) > UNIT_NORM_TOL)
        if bad.size:
            raise NonUnitRowError(bad[0], norms[bad[0]])
        object.__setattr__(self, "vectors", _frozen(v))

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @classmethod
    def from_raw(cls, vectors) -> "Configuration":
        """Normalize each row of ``vectors`` and wrap the result."""
        v = np.asarray(vectors, dtype=float)
        norms = np.linalg.norm(v, axis=-1, keepdims=True)
        if np.any(norms == 0):
            raise ValueError("cannot normalize a zero row")
        return cls(v / norms)


@dataclass(frozen=True)
class GramMatrix:
    """Symmetric PSD matrix of inner products with unit diagonal."""

    entries: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.entries, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ValueError(f"Gram matrix must be square, got shape {g.shape}")
        if np.max(np.abs(g - g.T), initial=0.0) > SYMMETRY_TOL:
            raise ValueError("Gram matrix is not symmetric")
        diag = np.diag(g)
        bad = np.flatnonzero(np.abs(diag - 1.0) > UNIT_NORM_TOL)
        if bad.size:
            raise ValueError(f"diagonal entry {bad[0]} is {diag[bad[0]]!r}, expected 1")
        lam_min = np.linalg.eigvalsh(g)[0]
        if lam_min < -PSD_TOL:
            raise ValueError(f"Gram matrix is not PSD (smallest eigenvalue {lam_min:.3e})")
        object.__setattr__(self, "entries", _frozen(g))

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class NullVector:
    """Unit vector ``y`` with ``G y ~ 0`` and the achieved residual ``|G y|``."""

    coords: np.ndarray
    residual: float = field(default=0.0)

    def __post_init__(self):
        y = np.asarray(self.coords, dtype=float)
        if abs(np.linalg.norm(y) - 1.0) > 1e-12:
            raise ValueError("null vector must have unit norm")
        if self.residual > NULLSPACE_TOL:
            raise RankError(f"null vector residual {self.residual:.3e} exceeds {NULLSPACE_TOL}")
        object.__setattr__(self, "coords", _frozen(y))


def gram(X: Configuration) -> GramMatrix:
    """Gram matrix of a configuration, ``G[i, j] = <x_i, x_j>``."""
    if not isinstance(X, Configuration):
        X = Configuration(X)
    v = X.vectors
    g = v @ v.T
    g = 0.5 * (g + g.T)
    np.fill_diagonal(g, 1.0)
    return GramMatrix(g)


def simplex_vectors(k: int) -> np.ndarray:
    """Regular simplex of ``k+1`` unit vectors in ``R^k``.

    All pairwise inner products equal ``-1/k``. Coordinates are taken in the
    Helmert basis of the sum-zero hyperplane of ``R^(k+1)``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    centered = np.eye(k + 1) - 1.0 / (k + 1)
    centered *= np.sqrt((k + 1) / k)
    helmert = np.zeros((k, k + 1))
    for j in range(1, k + 1):
        helmert[j - 1, :j] = 1.0
        helmert[j - 1, j] = -j
        helmert[j - 1] /= np.sqrt(j * (j + 1))
    v = centered @ helmert.T
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def lifted_etf(d: int, k: int) -> Configuration:
    """The lifted ETF ``L_k^d``: ``d+1`` unit vectors in ``R^d``.

    The first ``k+1`` vectors form a regular simplex in ``span(e_1..e_k)``
    (pairwise inner product ``-1/k``); the remaining ``d-k`` vectors are
    ``e_{k+1}, ..., e_d``.
    """
    if not (isinstance(d, (int, np.integer)) and isinstance(k, (int, np.integer))):
        raise TypeError("d and k must be integers")
    if not 1 <= k <= d:
        raise ValueError(f"k must satisfy 1 <= k <= d, got k={k}, d={d}")
    X = np.zeros((d + 1, d))
    X[: k + 1, :k] = simplex_vectors(k)
    for j in range(d - k):
        X[k + 1 + j, k + j] = 1.0
    return Configuration(X)


def onb_plus_repeats(d: int, m: int) -> Configuration:
    """Standard basis of ``R^d`` followed by ``m`` copies of ``e_1``."""
    if d < 1 or m < 0:
        raise ValueError(f"need d >= 1 and m >= 0, got d={d}, m={m}")
    X = np.vstack([np.eye(d), np.tile(np.eye(d)[:1], (m, 1))])
    return Configuration(X)


def realize_gram(G: GramMatrix, d: int) -> Configuration:
    """Configuration in ``R^d`` whose Gram matrix is ``G``.

    Uses the spectral factorization ``G = V diag(lam) V^T`` keeping the ``d``
    largest eigenpairs. Rows are renormalized to absorb discarded spectrum
    below ``RANK_TOL``.
    """
    if not isinstance(G, GramMatrix):
        G = GramMatrix(G)
    if d < 1:
        raise ValueError("d must be >= 1")
    lam, V = np.linalg.eigh(G.entries)
    if lam[0] < -PSD_TOL:
        raise ValueError(f"Gram matrix is not PSD (smallest eigenvalue {lam[0]:.3e})")
    n = G.n
    keep = min(d, n)
    dropped = lam[: n - keep]
    if dropped.size and dropped.max() > RANK_TOL:
        rank = int(np.sum(lam > RANK_TOL))
        raise RankError(f"Gram matrix has numerical rank {rank} > d={d}")
    top = np.clip(lam[n - keep:], 0.0, None)
    X = V[:, n - keep:] * np.sqrt(top)
    X = X[:, ::-1]
    if keep < d:
        X = np.hstack([X, np.zeros((n, d - keep))])
    return Configuration.from_raw(X)


def null_space_vector(G: GramMatrix) -> NullVector:
    """Unit vector spanning (part of) the kernel of ``G``.

    Returns the eigenvector of the smallest eigenvalue with its first
    non-negligible coordinate made positive.
    """
    if not isinstance(G, GramMatrix):
        G = GramMatrix(G)
    lam, V = np.linalg.eigh(G.entries)
    if lam[0] > NULLSPACE_TOL:
        raise RankError(f"Gram matrix is numerically full rank (smallest eigenvalue {lam[0]:.3e})")
    y = V[:, 0]
    lead = np.flatnonzero(np.abs(y) > 1e-12)
    if lead.size and y[lead[0]] < 0:
        y = -y
    y = y / np.linalg.norm(y)
    residual = float(np.linalg.norm(G.entries @ y))
    return NullVector(y, residual)


def canonical_signature(X: Configuration) -> np.ndarray:
    """Sorted off-diagonal ``|<x_i, x_j>|`` values, one per unordered pair.

    Invariant under a common orthogonal map, per-vector sign flips and
    permutations of the vectors.
    """
    v = X.vectors if isinstance(X, Configuration) else np.asarray(X, dtype=float)
    g = np.abs(v @ v.T)
    iu = np.triu_indices(v.shape[0], k=1)
    return np.sort(g[iu])


def random_configuration(n: int, d: int, rng=None) -> Configuration:
    """``n`` independent uniformly distributed unit vectors in ``R^d``."""
    rng = np.random.default_rng(rng)
    return Configuration.from_raw(rng.standard_normal((n, d)))


def random_orthogonal(d: int, rng=None) -> np.ndarray:
    """Haar-distributed orthogonal matrix via QR of a Gaussian matrix."""
    rng = np.random.default_rng(rng)
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.diag(r))
