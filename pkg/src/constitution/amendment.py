"""Self-amendment of a supermajority rule.

Given the rule in force and the agents' ideal thresholds, an amendment
either raises delta, lowers it, or keeps it.  Raising to ``x`` needs more
than ``x * n`` agents with ideal point at least ``x``; lowering to ``x``
needs more than ``delta * n`` agents (the *current* threshold) with ideal
point at most ``x``.  The Condorcet procedure jumps to the farthest
qualifying threshold, the conservative one to the nearest.

:func:`oracle_amend` reaches the same decisions without the closed forms:
it tries every grid threshold, keeps those whose ballot passes both the
current and the proposed rule, and then picks by majority domination or
by distance.
"""

from __future__ import annotations

import bisect
import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .core import (
    ConstitutionError,
    CycleError,
    Decision,
    DimensionError,
    Rule,
    approvals,
    decide,
    format_fraction,
    format_profile,
    grid_tuple,
    majority_count,
    parse_profile,
    snap_delta,
)
from .preferences import IdealProfile, amendment_ballot, ballot_from_levels, undominated_keys


class PropertyViolation(ConstitutionError, AssertionError):
    """A structural property guaranteed by the theory failed to hold."""

    def __init__(self, message, diagnostic=None):
        super().__init__(message)
        self.diagnostic = diagnostic


class Method(str, enum.Enum):
    CONDORCET = "condorcet"
    CONSERVATIVE = "conservative"


class Direction(str, enum.Enum):
    INCREASE = "increase"
    DECREASE = "decrease"
    NONE = "none"


@dataclass(frozen=True)
class AmendmentOutcome:
    rule: Rule
    new_rule: Optional[Rule] = None
    direction: Direction = Direction.NONE
    support: int = 0
    ballot: Optional[tuple] = None

    def __post_init__(self):
        if self.new_rule is None:
            if self.direction is not Direction.NONE or self.ballot is not None:
                raise PropertyViolation("a retained rule carries no direction or ballot")
            return
        if self.new_rule == self.rule or self.direction is Direction.NONE:
            raise PropertyViolation(f"amendment of {self.rule} to {self.new_rule} is not a change")
        if self.ballot is None or self.support != approvals(self.ballot):
            raise PropertyViolation("support must equal the approvals on the amendment ballot")
        if decide(self.rule, self.ballot) is not Decision.ACCEPT:
            raise PropertyViolation(f"{self.rule} rejects the ballot {format_profile(self.ballot)}")
        if decide(self.new_rule, self.ballot) is not Decision.ACCEPT:
            raise PropertyViolation(f"{self.new_rule} rejects its own amendment ballot")

    @property
    def amended(self) -> bool:
        return self.new_rule is not None

    @property
    def result(self) -> Rule:
        """The rule in force after this step."""
        return self.new_rule if self.new_rule is not None else self.rule

    def to_dict(self) -> dict:
        return {
            "n": self.rule.n,
            "delta": format_fraction(self.rule.delta),
            "m": self.rule.m,
            "decision": "amend" if self.amended else "retain",
            "direction": self.direction.value,
            "new_delta": None if self.new_rule is None else format_fraction(self.new_rule.delta),
            "new_m": None if self.new_rule is None else self.new_rule.m,
            "support": self.support,
            "ballot": None if self.ballot is None else format_profile(self.ballot),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "AmendmentOutcome":
        n = doc["n"]
        rule = Rule(n, doc["m"])
        if doc["decision"] == "retain":
            return cls(rule)
        return cls(
            rule,
            Rule(n, doc["new_m"]),
            Direction(doc["direction"]),
            doc["support"],
            parse_profile(doc["ballot"]),
        )


def _retain(rule: Rule) -> AmendmentOutcome:
    return AmendmentOutcome(rule)


def _amend_to(rule: Rule, ideals: IdealProfile, m: int) -> AmendmentOutcome:
    """Outcome of moving ``rule`` to grid level ``m``."""
    ballot = ballot_from_levels(ideals.levels, rule.m, m)
    direction = Direction.INCREASE if m > rule.m else Direction.DECREASE
    return AmendmentOutcome(rule, Rule(rule.n, m), direction, approvals(ballot), ballot)


def _check_dims(rule: Rule, ideals: IdealProfile) -> None:
    if ideals.n != rule.n:
        raise DimensionError(f"{ideals.n} ideal points for a rule over {rule.n} agents")


# -- closed forms ------------------------------------------------------------


def _delta_at(n: int, m: int) -> Fraction:
    return grid_tuple(n)[m - majority_count(n)]


# For a grid threshold x at level m, "count > x * n" is exactly "count >= m";
# the closed forms below run on those integer comparisons.


def _increase_levels(rule: Rule, ideals: IdealProfile) -> list[int]:
    n, ranked = rule.n, ideals.ranked_levels
    return [m for m in range(rule.m + 1, n + 1) if n - bisect.bisect_left(ranked, m) >= m]


def _decrease_levels(rule: Rule, ideals: IdealProfile) -> list[int]:
    ranked = ideals.ranked_levels
    return [m for m in range(majority_count(rule.n), rule.m) if bisect.bisect_right(ranked, m) >= rule.m]


def increase_candidates(rule: Rule, ideals: IdealProfile) -> list[Fraction]:
    """Grid thresholds ``x > delta`` held by more than ``x * n`` agents."""
    _check_dims(rule, ideals)
    return [_delta_at(rule.n, m) for m in _increase_levels(rule, ideals)]


def decrease_candidates(rule: Rule, ideals: IdealProfile) -> list[Fraction]:
    """Grid thresholds ``x < delta`` with more than ``delta * n`` ideal points at or below."""
    _check_dims(rule, ideals)
    return [_delta_at(rule.n, m) for m in _decrease_levels(rule, ideals)]


def _closed_form(rule: Rule, ideals: IdealProfile, farthest: bool) -> AmendmentOutcome:
    _check_dims(rule, ideals)
    up = _increase_levels(rule, ideals)
    down = _decrease_levels(rule, ideals)
    if up and down:
        fmt = lambda ms: [format_fraction(_delta_at(rule.n, m)) for m in ms]  # noqa: E731
        raise PropertyViolation(f"both an increase {fmt(up)} and a decrease {fmt(down)} qualify")
    if up:
        return _amend_to(rule, ideals, up[-1] if farthest else up[0])
    if down:
        return _amend_to(rule, ideals, down[0] if farthest else down[-1])
    return _retain(rule)


def condorcet_amend(rule: Rule, ideals: IdealProfile) -> AmendmentOutcome:
    """Largest qualifying increase, else smallest qualifying decrease, else retain."""
    return _closed_form(rule, ideals, farthest=True)


def conservative_amend(rule: Rule, ideals: IdealProfile) -> AmendmentOutcome:
    """Smallest qualifying increase, else largest qualifying decrease, else retain."""
    return _closed_form(rule, ideals, farthest=False)


def amend(rule: Rule, ideals: IdealProfile, method: Method) -> AmendmentOutcome:
    method = Method(method)
    if method is Method.CONDORCET:
        return condorcet_amend(rule, ideals)
    return conservative_amend(rule, ideals)


# -- axiom-direct oracle -----------------------------------------------------


def posterior_consistent(delta, delta_prime, ideals: IdealProfile) -> bool:
    """Whether a ballot accepted by ``d^delta`` would also pass ``d^delta_prime``."""
    ballot = amendment_ballot(ideals, delta, delta_prime)
    if decide(snap_delta(ideals.n, delta), ballot) is Decision.REJECT:
        return True
    return decide(snap_delta(ideals.n, delta_prime), ballot) is Decision.ACCEPT


@dataclass(frozen=True)
class OracleDiagnostic:
    survivors: tuple  # sorted deltas
    support: dict  # delta -> approvals on its ballot
    undominated: tuple = ()
    max_approval: tuple = ()
    choice: Optional[Fraction] = None

    @property
    def max_approval_agrees(self) -> Optional[bool]:
        """Whether maximising ballot approvals picks the same amendment."""
        if self.choice is None:
            return None
        return self.max_approval == (self.choice,)

    def to_dict(self) -> dict:
        fmt = format_fraction
        return {
            "survivors": [fmt(x) for x in self.survivors],
            "support": {fmt(x): self.support[x] for x in self.survivors},
            "undominated": [fmt(x) for x in self.undominated],
            "max_approval": [fmt(x) for x in self.max_approval],
            "choice": None if self.choice is None else fmt(self.choice),
            "max_approval_agrees": self.max_approval_agrees,
        }


def survivor_levels(rule: Rule, ideals: IdealProfile) -> dict:
    """Amendments the rule in force accepts and that pass their own rule.

    Maps the grid level ``m`` of each surviving threshold to the approvals
    on its ballot.
    """
    _check_dims(rule, ideals)
    support = {}
    for m in range(majority_count(rule.n), rule.n + 1):
        if m == rule.m:
            continue
        ballot = ballot_from_levels(ideals.levels, rule.m, m)
        if decide(rule, ballot) is Decision.ACCEPT and decide(Rule(rule.n, m), ballot) is Decision.ACCEPT:
            support[m] = approvals(ballot)
    return support


def oracle_survivors(rule: Rule, ideals: IdealProfile) -> dict:
    """:func:`survivor_levels` keyed by threshold instead of level."""
    return {_delta_at(rule.n, m): k for m, k in survivor_levels(rule, ideals).items()}


def oracle_amend(rule: Rule, ideals: IdealProfile, mode: Method = Method.CONDORCET, survivors: dict | None = None):
    """Brute-force amendment straight from the amendment axioms.

    Returns ``(outcome, diagnostic)``.  Raises :class:`PropertyViolation`
    rather than breaking a tie if the selection is not unique.
    ``survivors`` may pass in a precomputed :func:`survivor_levels` result.
    """
    mode = Method(mode)
    support = survivor_levels(rule, ideals) if survivors is None else survivors
    if not support:
        return _retain(rule), OracleDiagnostic((), {})

    n = rule.n
    levels = sorted(support)
    best = max(support.values())
    max_approval = [m for m in levels if support[m] == best]
    undominated = undominated_keys(ideals.levels, levels, n)
    if mode is Method.CONDORCET:
        picks = undominated
    else:
        # 2n * delta is an integer on the grid, so distances compare exactly
        def scaled(m):
            return max(n, 2 * (m - 1))

        gap = min(abs(scaled(m) - scaled(rule.m)) for m in levels)
        picks = [m for m in levels if abs(scaled(m) - scaled(rule.m)) == gap]

    def deltas(ms):
        return tuple(_delta_at(n, m) for m in ms)

    diagnostic = OracleDiagnostic(
        deltas(levels),
        {_delta_at(n, m): support[m] for m in levels},
        deltas(undominated),
        deltas(max_approval),
        _delta_at(n, picks[0]) if len(picks) == 1 else None,
    )
    if len(picks) != 1:
        raise PropertyViolation(
            f"{mode.value} selection is not unique: {[format_fraction(x) for x in deltas(picks)]}", diagnostic
        )
    return _amend_to(rule, ideals, picks[0]), diagnostic


# -- iteration ---------------------------------------------------------------


@dataclass(frozen=True)
class Trajectory:
    steps: tuple  # (Rule, AmendmentOutcome) pairs, last one retains
    method: Method = field(default=Method.CONSERVATIVE)

    @property
    def terminal(self) -> Rule:
        return self.steps[-1][0]

    @property
    def deltas(self) -> list[Fraction]:
        return [rule.delta for rule, _ in self.steps]

    def __len__(self):
        return len(self.steps)

    def to_dict(self) -> dict:
        return {
            "method": self.method.value,
            "start": format_fraction(self.steps[0][0].delta),
            "terminal": format_fraction(self.terminal.delta),
            "terminal_m": self.terminal.m,
            "path": [format_fraction(x) for x in self.deltas],
            "steps": [outcome.to_dict() for _, outcome in self.steps],
        }


def iterate_to_fixpoint(rule: Rule, ideals: IdealProfile, method: Method = Method.CONSERVATIVE) -> Trajectory:
    """Amend repeatedly until the rule in force is retained.

    Raises :class:`~constitution.core.CycleError` after
    ``len(delta_grid(n)) + 1`` steps; revisiting any threshold means a cycle.
    """
    method = Method(method)
    _check_dims(rule, ideals)
    cap = len(grid_tuple(rule.n)) + 1
    steps = []
    current = rule
    while len(steps) < cap:
        outcome = amend(current, ideals, method)
        steps.append((current, outcome))
        if not outcome.amended:
            return Trajectory(tuple(steps), method)
        current = outcome.new_rule
    raise CycleError(f"{method.value} amendment did not settle within {cap} steps")


def simple_majority(n: int) -> Rule:
    return Rule(n, majority_count(n))
