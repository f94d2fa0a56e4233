"""
Regimes and classical bounds
============================

For ``N = d+1`` vectors the exponent axis ``(0, 2)`` splits into ``d``
regimes; in the ``k``-th one the minimal potential is ``(k+1) k^(1-p)``,
attained by ``L_k^d``. This script prints the regime table and compares the
minimum with the classical lower bounds.
"""

import numpy as np

import framepot as fp

###############################################################################
# Regime boundaries ``p_k`` and the dual thresholds ``a_k``.
d = 5
table = fp.regime_boundaries(d)
for k in range(1, d + 1):
    lo, hi = table.interval(k)
    print(f"k={k}: p in ({lo:.6f}, {hi:.6f})")

###############################################################################
# The minimum switches from ``L_k`` to ``L_{k+1}`` exactly at ``p_k``, where
# the two potentials coincide.
for k in range(1, d):
    pk = fp.regime_exponent(k)
    print(k, fp.lifted_etf_potential(k, pk), fp.lifted_etf_potential(k + 1, pk))

###############################################################################
# Scan ``p`` and check that the theorem value is the smallest lifted ETF
# potential, and that it sits above Glazyrin's bound for ``p`` in ``[1, 2]``.
for p in np.linspace(0.2, 1.9, 8):
    regime, value = fp.theorem_min_value(d, p)
    best = min(fp.lifted_etf_potential(k, p) for k in range(1, d + 1))
    line = f"p={p:.3f} k={regime.k} min={value:.6f} best L_k={best:.6f}"
    if p >= 1:
        line += f" glazyrin={fp.glazyrin_bound(d + 1, d, p):.6f}"
    print(line)

###############################################################################
# At ``p = 2`` the simplex ETF meets the frame bound, and for ``p > 2`` it
# meets the Ehler-Okoudjou bound.
etf = fp.lifted_etf(d, d)
print(fp.frame_potential(etf, 2), fp.sidelnikov_bound(d + 1, d, 1))
print(fp.frame_potential(etf, 3), fp.ehler_okoudjou_bound(d + 1, d, 3))
