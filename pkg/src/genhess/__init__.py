"""Exact generalized Hessians of the squared plus-penalty of ``A x <= b``."""

from .hessian import (
    ActiveSetTooLarge,
    AnalysisReport,
    HessianHull,
    SignPattern,
    analyze,
    check_li,
    check_slater,
    enumerate_achievable_patterns,
    generalized_hessian,
    limiting_hessians,
    mangasarian_extremes,
    verify_evtushenko,
    verify_mangasarian_equality,
)
from .lp import hull_membership, solve_lp, strict_feasibility
from .newton import NewtonConfig, SolveTrace, solve
from .oracle import RadiusTooLarge, fd_gradient, fd_hessian, sample_limiting_hessians
from .problem import (
    ActivityPartition,
    CandidateHessian,
    LinearSystem,
    Side,
    StarEntry,
    candidate_from_binary,
    classify_indices,
    d_matrix,
    eval_f,
    eval_grad,
    star_diagonal,
)

__all__ = [
    "ActiveSetTooLarge",
    "ActivityPartition",
    "AnalysisReport",
    "CandidateHessian",
    "HessianHull",
    "LinearSystem",
    "NewtonConfig",
    "RadiusTooLarge",
    "Side",
    "SignPattern",
    "SolveTrace",
    "StarEntry",
    "analyze",
    "candidate_from_binary",
    "check_li",
    "check_slater",
    "classify_indices",
    "d_matrix",
    "enumerate_achievable_patterns",
    "eval_f",
    "eval_grad",
    "fd_gradient",
    "fd_hessian",
    "generalized_hessian",
    "hull_membership",
    "limiting_hessians",
    "mangasarian_extremes",
    "sample_limiting_hessians",
    "solve",
    "solve_lp",
    "star_diagonal",
    "strict_feasibility",
    "verify_evtushenko",
    "verify_mangasarian_equality",
]

__version__ = "0.1.0"
