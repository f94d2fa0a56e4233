"""Desk-scale verification campaigns for the ``N = d+1`` minimal potential.

A campaign samples exponents inside every regime ``(p_{k-1}, p_k)`` and at
every boundary ``p_k``, minimizes numerically and checks the result against
the closed-form minimum and the lifted ETF pattern.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

from .core import lifted_etf
from .optimizer import MinimizeOptions, minimize_fp
from .potential import frame_potential, lifted_etf_potential, regime_boundaries

REL_GAP_TOL = 1e-6
BOUNDARY_VALUE_TOL = 1e-10


def interior_samples(d: int, per_regime: int) -> list[tuple[int, float]]:
    """Evenly spaced exponents strictly inside each regime, as ``(k, p)`` pairs."""
    b = regime_boundaries(d).boundaries
    out = []
    for k in range(1, d + 1):
        lo, hi = b[k - 1], b[k]
        for j in range(1, per_regime + 1):
            out.append((k, float(lo + (hi - lo) * j / (per_regime + 1))))
    return out


@dataclass
class CellResult:
    d: int
    p: float
    kind: str
    expected: tuple[int, ...]
    theoretical: float
    value: float
    rel_gap: float
    classified_as: int | None
    passed: bool
    reasons: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["expected"] = list(self.expected)
        return out


def _threads():
    try:
        return max(1, int(os.environ.get("FRAMEPOT_THREADS", "1")))
    except ValueError:
        return 1


def run_cell(d, p, expected, kind, opts, theory=lifted_etf_potential):
    """Minimize at ``(d, p)`` and check value and classification.

    ``theory(k, p)`` supplies the expected minimum. Only the descent result
    counts; the lifted ETF fallback of :func:`minimize_fp` is ignored.
    """
    rep = minimize_fp(d, p, opts)
    theoretical = theory(expected[0], p)
    gap = (rep.descent_value - theoretical) / max(theoretical, 1e-300)
    reasons = []
    if abs(gap) > REL_GAP_TOL:
        reasons.append(f"rel_gap {gap:.3e} exceeds {REL_GAP_TOL}")
    if rep.descent_classified_as not in expected:
        reasons.append(f"classified as {rep.descent_classified_as}, expected one of {list(expected)}")
    if kind == "boundary":
        k = expected[0]
        diff = abs(frame_potential(lifted_etf(d, k), p) - frame_potential(lifted_etf(d, k + 1), p))
        if diff > BOUNDARY_VALUE_TOL:
            reasons.append(f"|FP(L_{k}) - FP(L_{k + 1})| = {diff:.3e}")
        tdiff = abs(theory(k, p) - theory(k + 1, p))
        if tdiff > BOUNDARY_VALUE_TOL:
            reasons.append(f"closed forms for k={k}, {k + 1} differ by {tdiff:.3e}")
    return CellResult(d, p, kind, tuple(expected), theoretical, rep.descent_value, gap,
                      rep.descent_classified_as, not reasons, reasons)


def verify_campaign(d_list, per_regime=5, restarts=100, seed=0, boundaries=True,
                    theory=lifted_etf_potential, max_iters=20_000) -> list[CellResult]:
    """Run every interior and boundary cell; results sorted by ``(d, p)``."""
    opts = MinimizeOptions(restarts=restarts, seed=seed, max_iters=max_iters)
    jobs = []
    for d in sorted(set(d_list)):
        for k, p in interior_samples(d, per_regime):
            jobs.append((d, p, (k,), "interior"))
        if boundaries:
            b = regime_boundaries(d).boundaries
            for k in range(1, d):
                jobs.append((d, float(b[k]), (k, k + 1), "boundary"))

    def work(job):
        d, p, expected, kind = job
        return run_cell(d, p, expected, kind, opts, theory)

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        results = list(pool.map(work, jobs))
    return sorted(results, key=lambda r: (r.d, r.p))


def summarize(results) -> dict:
    failed = [r for r in results if not r.passed]
    return {
        "cells": len(results),
        "failed": len(failed),
        "passed": not failed,
        "max_abs_rel_gap": float(max((abs(r.rel_gap) for r in results), default=0.0)),
        "failures": [r.to_dict() for r in failed],
    }


__all__ = ["interior_samples", "run_cell", "verify_campaign", "summarize", "CellResult",
           "REL_GAP_TOL", "BOUNDARY_VALUE_TOL"]
