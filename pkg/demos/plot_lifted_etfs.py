"""
Lifted equiangular tight frames
===============================

A lifted ETF ``L_k^d`` is ``d+1`` unit vectors in ``R^d``: a regular simplex
of ``k+1`` vectors in a ``k``-dimensional subspace, completed by an
orthonormal basis of the complement. Here we build a few and look at their
Gram matrices and potentials.
"""

import numpy as np

import framepot as fp

np.set_printoptions(precision=4, suppress=True)

###############################################################################
# The Gram matrix of ``L_2^4`` has a 3x3 block with off-diagonal ``-1/2``
# and an identity block for the two lifted basis vectors.
X = fp.lifted_etf(4, 2)
print(fp.gram(X).entries)

###############################################################################
# Its p-frame potential counts ``k(k+1)`` ordered pairs of magnitude ``1/k``,
# so it equals ``(k+1) k^(1-p)`` for every ``p``.
for p in (0.5, 1.0, 1.5, 2.0):
    print(f"p={p}: FP={fp.frame_potential(X, p):.12f}  closed form={3 * 2 ** (1 - p):.12f}")

###############################################################################
# Only ``k`` matters for the value: the same ``L_k`` in a larger ambient
# dimension has the same potential.
for d in range(3, 7):
    print(d, fp.frame_potential(fp.lifted_etf(d, 3), 1.3))

###############################################################################
# The coherence of ``L_k^d`` is ``1/k`` for ``k >= 2`` and ``1`` for the
# repeated-vector case ``k = 1``.
print([round(fp.coherence(fp.lifted_etf(5, k)), 6) for k in range(1, 6)])
