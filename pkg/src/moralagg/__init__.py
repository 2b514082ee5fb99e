"""Exact aggregation of ethical-theory evaluations under moral uncertainty."""

from .core import (
    ActionSet,
    ActionSetMismatch,
    CredenceMassExceeded,
    CredenceOutOfRange,
    CredenceSumNotOne,
    DuplicateActionId,
    DuplicateTheoryId,
    EmptyRestriction,
    EthicalFramework,
    MissingEvaluation,
    MoralAggError,
    Ranking,
    Rational,
    Theory,
    UnknownAction,
    UnknownTheoryId,
    extend,
    ranking_from_scores,
    rankings_equal,
    restrict,
    theory_ranking,
    to_rational,
    validate_framework,
)
from .functionals import (
    AggregateResult,
    InvalidSpec,
    SortedEvaluations,
    SwfKind,
    SwfSpec,
    TrimMode,
    aggregate,
    bottom_k,
    min_evaluation,
    sorted_evaluations,
    top_k,
    trimmed_wam,
    wam,
    wmedian,
)
from .fanaticism import (
    BadCredence,
    BadCredencePair,
    ConstructionFailed,
    CredenceTooHigh,
    DominanceVerdict,
    DominantSubset,
    NotProperSubset,
    TargetIsUniqueMaximizer,
    TooManyTheories,
    WitnessReport,
    canonical_family,
    enumerate_dominant_subsets,
    is_dominant_subset,
    probe_hm_non_fanatical,
    probe_kthm_non_fanatical,
    witness_kthm,
    witness_maximin,
    witness_mec,
)
from .scenario import (
    NumberFormatError,
    ScenarioDocument,
    ScenarioError,
    ScenarioSyntaxError,
    ScenarioTheory,
    ValidationError,
    parse_scenario,
    serialize_scenario,
)
from .audit import AuditReport, SuiteResult, run_audit

__version__ = "0.1.0"

__all__ = [
    "ActionSet",
    "ActionSetMismatch",
    "AggregateResult",
    "AuditReport",
    "BadCredence",
    "BadCredencePair",
    "ConstructionFailed",
    "CredenceMassExceeded",
    "CredenceOutOfRange",
    "CredenceSumNotOne",
    "CredenceTooHigh",
    "DominanceVerdict",
    "DominantSubset",
    "DuplicateActionId",
    "DuplicateTheoryId",
    "EmptyRestriction",
    "EthicalFramework",
    "InvalidSpec",
    "MissingEvaluation",
    "MoralAggError",
    "NotProperSubset",
    "NumberFormatError",
    "Ranking",
    "Rational",
    "ScenarioDocument",
    "ScenarioError",
    "ScenarioSyntaxError",
    "ScenarioTheory",
    "SortedEvaluations",
    "SuiteResult",
    "SwfKind",
    "SwfSpec",
    "TargetIsUniqueMaximizer",
    "Theory",
    "TooManyTheories",
    "TrimMode",
    "UnknownAction",
    "UnknownTheoryId",
    "ValidationError",
    "WitnessReport",
    "aggregate",
    "bottom_k",
    "canonical_family",
    "enumerate_dominant_subsets",
    "extend",
    "is_dominant_subset",
    "min_evaluation",
    "parse_scenario",
    "probe_hm_non_fanatical",
    "probe_kthm_non_fanatical",
    "ranking_from_scores",
    "rankings_equal",
    "restrict",
    "run_audit",
    "serialize_scenario",
    "sorted_evaluations",
    "theory_ranking",
    "to_rational",
    "top_k",
    "trimmed_wam",
    "validate_framework",
    "wam",
    "witness_kthm",
    "witness_maximin",
    "witness_mec",
    "wmedian",
]
