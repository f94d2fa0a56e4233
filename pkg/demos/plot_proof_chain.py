"""
The lower-bound chain
=====================

For ``d+1`` vectors in ``R^d`` the Gram matrix has a null vector ``y``. Hoelder's
inequality turns ``sum |g_ij| |y_i| |y_j| >= 1`` into
``FP >= M(z)^(-p/q)`` with ``z = y^2``, and maximizing ``M`` gives the
theorem's bound. ``verify_proof_chain`` evaluates every step.
"""

import numpy as np

import framepot as fp

rng = np.random.default_rng(0)

###############################################################################
# On a random configuration every slack is nonnegative.
X = fp.random_configuration(5, 4, rng)
rep = fp.verify_proof_chain(X, 1.5)
print({k: round(v, 6) for k, v in rep.slacks.items()})

###############################################################################
# On the optimal lifted ETF every step is an equality.
p = 1.5
k = fp.theorem_min_value(4, p)[0].k
rep = fp.verify_proof_chain(fp.lifted_etf(4, k), p)
print(k, {name: f"{v:.1e}" for name, v in rep.slacks.items()})

###############################################################################
# On a lifted ETF from the wrong regime the chain still holds, but the
# final bound is strictly below its potential.
rep = fp.verify_proof_chain(fp.lifted_etf(3, 1), 1.9)
print(rep.potential, rep.final_bound)
