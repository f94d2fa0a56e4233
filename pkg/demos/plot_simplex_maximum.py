"""
Maximizing M on the probability simplex
=======================================

The lower bound for the potential reduces to maximizing
``M(z) = (sum z_i^a)^2 - sum z_i^(2a)`` over the simplex. Its maximizers are
uniform on ``k+1`` coordinates, where ``k`` is picked by the comparison
function ``H(x) = x^(1-2a) (x-1)``.
"""

import numpy as np

import framepot as fp
from framepot import simplex

np.set_printoptions(precision=6, suppress=True)

###############################################################################
# ``H`` is unimodal in ``x`` with its continuous peak at ``1 + 1/(2a-2)``.
alpha = 1.3
print([round(simplex.comparison_H(x, alpha), 6) for x in range(2, 10)])
print("peak at", simplex.comparison_H_peak(alpha))

###############################################################################
# The analytic maximizer against a brute-force search (two-level grid plus
# projected ascent from random starts).
d = 4
for alpha in (1.05, 1.2, 1.5, 3.0):
    an = fp.maximize_m_analytic(d, alpha)
    pt, val = fp.maximize_m_brute(d, alpha)
    print(f"alpha={alpha}: support {an.supports[0]}, analytic {an.value:.12f}, brute {val:.12f}")
    print("   brute point", pt.z)

###############################################################################
# At a threshold ``a_k`` two uniform points tie.
a2 = fp.alpha_threshold(2)
tie = fp.maximize_m_analytic(d, a2)
print(a2, tie.supports, [simplex.m_objective(p.z, a2) for p in tie.points])
