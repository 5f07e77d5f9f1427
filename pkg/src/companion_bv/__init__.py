"""Companion Ostrowski-type bounds for functions of bounded variation.

Functions are piecewise monotone polynomials (:class:`PwmFunction`) on which
total variation, the variation profile and integrals are exact. On top of
that sit the bound chains (:mod:`.bounds`), certified companion-rule
quadrature (:mod:`.quadrature`), the CDF specialisation (:mod:`.prob`) and the
verification harness (:mod:`.harness`).
"""

from .bounds import (
    BoundReport,
    HolderExponent,
    chain_report,
    coarse_bound,
    coarse_holder_bound,
    companion_rule,
    holder_remainder,
    kernel_K,
    ostrowski_bv_bound,
    outer_bound,
    q_bound,
    q_holder_bound,
    r_p_kernel,
    special_case_bounds,
)
from .core import (
    Interval,
    PiecewisePoly,
    PolySegment,
    PwmFunction,
    box,
    constant,
    cumulative_variation,
    evaluate,
    integral,
    is_symmetric,
    polynomial,
    step,
    variation,
    variation_profile,
)
from .errors import (
    ArgumentError,
    BVError,
    ChainViolationError,
    ConsistencyError,
    ConstructionError,
    DomainError,
    PreconditionError,
    SpecFileError,
)
from .harness import (
    ChainViolation,
    CorpusConfig,
    PiecewiseWeight,
    check_kernel_identity,
    check_lemma_chain,
    gen_cdf_corpus,
    gen_corpus,
    kernel_discrepancy_report,
    sharpness_probe,
    stieltjes_sum,
    verify_corpus,
    weighted_variation_integral,
)
from .prob import CdfModel, check_prob_chain, expectation, t_bound, t_holder_bound
from .quadrature import CellRule, QuadratureResult, adaptive_integrate, composite_integrate
from .specfile import function_from_dict, function_to_dict, load_function

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "BVError",
    "BoundReport",
    "CdfModel",
    "CellRule",
    "ChainViolation",
    "ChainViolationError",
    "ConsistencyError",
    "ConstructionError",
    "CorpusConfig",
    "DomainError",
    "HolderExponent",
    "Interval",
    "PiecewisePoly",
    "PiecewiseWeight",
    "PolySegment",
    "PreconditionError",
    "PwmFunction",
    "QuadratureResult",
    "SpecFileError",
    "adaptive_integrate",
    "box",
    "chain_report",
    "check_kernel_identity",
    "check_lemma_chain",
    "check_prob_chain",
    "coarse_bound",
    "coarse_holder_bound",
    "companion_rule",
    "composite_integrate",
    "constant",
    "cumulative_variation",
    "evaluate",
    "expectation",
    "function_from_dict",
    "function_to_dict",
    "gen_cdf_corpus",
    "gen_corpus",
    "holder_remainder",
    "integral",
    "is_symmetric",
    "kernel_K",
    "kernel_discrepancy_report",
    "load_function",
    "ostrowski_bv_bound",
    "outer_bound",
    "polynomial",
    "q_bound",
    "q_holder_bound",
    "r_p_kernel",
    "sharpness_probe",
    "special_case_bounds",
    "step",
    "stieltjes_sum",
    "t_bound",
    "t_holder_bound",
    "variation",
    "variation_profile",
    "verify_corpus",
    "weighted_variation_integral",
]
