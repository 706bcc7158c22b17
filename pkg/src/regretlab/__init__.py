"""Online binary classification under a finite hypothesis class.

Version-space learners (consistent, halving, soa), the randomized
expert-advice learner (wm), their hybrids (wm_consistent, wm_halving,
wm_soa), exact Littlestone dimension with witness trees, and a
permutation-based evaluation harness with theoretical bound checks.
"""

from .errors import (
    DimensionMismatch,
    EmptyVersionSpace,
    FactorialCapExceeded,
    IndexOutOfRange,
    RegretlabError,
    UnknownInstance,
    UnsupportedFormat,
    WrongPhase,
)
from .experiments import (
    BoundVerdict,
    PermutationReport,
    check_bounds,
    emit_report,
    evaluate,
    with_bounds,
)
from .hypotheses import (
    FiniteHypothesisClass,
    Sequence,
    VersionSpace,
    best_mistakes,
    mistake_profile,
    restrict,
)
from .ldim import LdimComputer, LdimResult, ShatteredTree, ldim, ldim_witness_check
from .learners import (
    ANALYTIC,
    Analytic,
    LearnerConfig,
    Prediction,
    RunTrace,
    Sampled,
    WeightedMajority,
    eta_for,
    make_learner,
    run,
    wm_weights,
)
from .sequences import (
    ExperimentCase,
    PermutationStream,
    label_sequence,
    make_case_inputs,
    make_domain,
    make_threshold_class,
    permutations,
)

__all__ = [
    "ANALYTIC",
    "Analytic",
    "BoundVerdict",
    "DimensionMismatch",
    "EmptyVersionSpace",
    "ExperimentCase",
    "FactorialCapExceeded",
    "FiniteHypothesisClass",
    "IndexOutOfRange",
    "LdimComputer",
    "LdimResult",
    "LearnerConfig",
    "PermutationReport",
    "PermutationStream",
    "Prediction",
    "RegretlabError",
    "RunTrace",
    "Sampled",
    "Sequence",
    "ShatteredTree",
    "UnknownInstance",
    "UnsupportedFormat",
    "VersionSpace",
    "WeightedMajority",
    "WrongPhase",
    "best_mistakes",
    "check_bounds",
    "emit_report",
    "eta_for",
    "evaluate",
    "label_sequence",
    "ldim",
    "ldim_witness_check",
    "make_case_inputs",
    "make_domain",
    "make_learner",
    "make_threshold_class",
    "mistake_profile",
    "permutations",
    "restrict",
    "run",
    "with_bounds",
    "wm_weights",
]
