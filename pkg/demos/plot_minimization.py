"""
Numerical minimization
======================

Random-restart gradient descent on the product of spheres, with the
nonsmooth ``|t|^p`` replaced by ``(t^2 + eps^2)^(p/2)`` and ``eps`` annealed
to ``1e-9``. The minimizers it finds are classified against the lifted ETFs.
"""

import numpy as np

import framepot as fp

np.set_printoptions(precision=4, suppress=True)

###############################################################################
# One cell in each regime for ``d = 3``. The descent value is reported
# separately from the lifted ETF fallback.
opts = fp.MinimizeOptions(restarts=30, seed=1)
for p in (0.5, 1.2, 1.8):
    rep = fp.minimize_fp(3, p, opts)
    print(f"p={p}: descent {rep.descent_value:.12f} theory {rep.theoretical:.12f} "
          f"class {rep.descent_classified_as} fallback used {rep.used_fallback}")

###############################################################################
# The Gram matrix of the last minimizer, up to signs and permutation, is the
# simplex ETF ``L_3^3``.
G = rep.best.vectors @ rep.best.vectors.T
print(np.abs(G))

###############################################################################
# Restarts land in different basins; the distribution of final values shows
# how often the global one is found.
print(np.round(np.sort(rep.values)[:10], 8))
