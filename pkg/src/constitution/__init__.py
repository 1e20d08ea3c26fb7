"""Founding and amending a supermajority constitution for n agents."""

from .amendment import (
    AmendmentOutcome,
    Direction,
    Method,
    OracleDiagnostic,
    PropertyViolation,
    Trajectory,
    condorcet_amend,
    conservative_amend,
    iterate_to_fixpoint,
    oracle_amend,
    posterior_consistent,
)
from .axioms import (
    CountRule,
    EnumerationReport,
    Mode,
    TruthTableRule,
    check_anonymous,
    check_concordant,
    check_monotonic,
    enumerate_consistent_rules,
    founding_rule,
    minimality_prefers,
)
from .core import (
    CapacityError,
    ConstitutionError,
    CycleError,
    Decision,
    DegenerateAmendmentError,
    DimensionError,
    DomainError,
    ParseError,
    Rule,
    approvals,
    canonical_delta,
    decide,
    delta_grid,
    snap_delta,
)
from .preferences import IdealProfile, Preference, amendment_ballot, compare, dominates, most_preferred

__version__ = "0.1.0"

__all__ = [
    "AmendmentOutcome",
    "Direction",
    "Method",
    "OracleDiagnostic",
    "PropertyViolation",
    "Trajectory",
    "condorcet_amend",
    "conservative_amend",
    "iterate_to_fixpoint",
    "oracle_amend",
    "posterior_consistent",
    "CountRule",
    "EnumerationReport",
    "Mode",
    "TruthTableRule",
    "check_anonymous",
    "check_concordant",
    "check_monotonic",
    "enumerate_consistent_rules",
    "founding_rule",
    "minimality_prefers",
    "CapacityError",
    "ConstitutionError",
    "CycleError",
    "Decision",
    "DegenerateAmendmentError",
    "DimensionError",
    "DomainError",
    "ParseError",
    "Rule",
    "approvals",
    "canonical_delta",
    "decide",
    "delta_grid",
    "snap_delta",
    "IdealProfile",
    "Preference",
    "amendment_ballot",
    "compare",
    "dominates",
    "most_preferred",
]
