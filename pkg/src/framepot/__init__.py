"""Minimal p-frame potentials of d+1 unit vectors in R^d."""

from .core import (
    Configuration,
    GramMatrix,
    NonUnitRowError,
    NullVector,
    RankError,
    canonical_signature,
    gram,
    lifted_etf,
    null_space_vector,
    onb_plus_repeats,
    random_configuration,
    realize_gram,
)
from .optimizer import (
    MinimizeOptions,
    OptimizationReport,
    classify_minimizer,
    minimize_fp,
    smoothed_fp_and_gradient,
    verify_proof_chain,
)
from .potential import (
    RegimeTable,
    alpha_of_p,
    alpha_threshold,
    coherence,
    ehler_okoudjou_bound,
    frame_potential,
    glazyrin_bound,
    lifted_etf_potential,
    regime_boundaries,
    regime_exponent,
    regime_index,
    sidelnikov_bound,
    theorem_min_value,
)
from .simplex import (
    SimplexPoint,
    TwoLevelPoint,
    comparison_H,
    f_restriction,
    find_h_roots,
    h1_min_location,
    h1_poly,
    h_poly,
    m_objective,
    maximize_m_analytic,
    maximize_m_brute,
)

__version__ = "0.1.0"
