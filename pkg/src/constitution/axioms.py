"""Founding axioms as executable predicates over arbitrary decision rules.

Two representations of a candidate rule are used:

* :class:`TruthTableRule` -- an explicit accept/reject entry for each of the
  ``2**n`` profiles.  Profile ``V`` is addressed by the bitmask whose bit
  ``i`` is ``V[i]``.
* :class:`CountRule` -- an accept/reject entry per approval count
  ``0..n``.  This is the quotient of an anonymous truth table.

:func:`enumerate_consistent_rules` walks the whole candidate space for a
given ``n`` and keeps the rules that are monotone, anonymous and
concordant.  Every non-degenerate survivor turns out to be a threshold rule
with a strict-majority threshold, and Minimality singles out simple
majority (:func:`founding_rule`).
"""

from __future__ import annotations

import enum
import functools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Union

from .core import (
    CapacityError,
    Decision,
    DimensionError,
    DomainError,
    Rule,
    majority_count,
)

FULL_TABLE_MAX_N = 4
COUNT_ONLY_MAX_N = 20


class Mode(str, enum.Enum):
    FULL_TABLE = "full"
    COUNT_ONLY = "count"


@dataclass(frozen=True)
class TruthTableRule:
    n: int
    table: tuple  # table[mask] -> bool, len 2**n

    def __post_init__(self):
        if len(self.table) != 1 << self.n:
            raise DimensionError(f"truth table for n={self.n} needs {1 << self.n} entries")

    def __call__(self, profile) -> Decision:
        mask = 0
        for i, b in enumerate(profile):
            if b:
                mask |= 1 << i
        return Decision(bool(self.table[mask]))

    @classmethod
    def from_function(cls, n: int, func) -> "TruthTableRule":
        """Tabulate ``func(profile_tuple) -> bool`` over every profile."""
        return cls(n, tuple(bool(func(mask_to_profile(mask, n))) for mask in range(1 << n)))

    @classmethod
    def from_index(cls, n: int, index: int) -> "TruthTableRule":
        return cls(n, tuple(bool(index >> mask & 1) for mask in range(1 << n)))


@dataclass(frozen=True)
class CountRule:
    n: int
    accept: tuple  # accept[k] -> bool, len n + 1

    def __post_init__(self):
        if len(self.accept) != self.n + 1:
            raise DimensionError(f"count rule for n={self.n} needs {self.n + 1} entries")

    def __call__(self, profile) -> Decision:
        return Decision(bool(self.accept[sum(1 for b in profile if b)]))

    @classmethod
    def threshold(cls, n: int, m: int) -> "CountRule":
        """Accept iff the approval count is at least ``m``."""
        return cls(n, tuple(k >= m for k in range(n + 1)))

    @classmethod
    def from_index(cls, n: int, index: int) -> "CountRule":
        return cls(n, tuple(bool(index >> k & 1) for k in range(n + 1)))

    @classmethod
    def from_rule(cls, rule: Rule) -> "CountRule":
        return cls.threshold(rule.n, rule.m)

    def lift(self) -> TruthTableRule:
        """The truth table that applies this rule to every profile."""
        return TruthTableRule(self.n, tuple(self.accept[bin(mask).count("1")] for mask in range(1 << self.n)))

    @property
    def is_degenerate(self) -> bool:
        """True for the rule that rejects every profile."""
        return not any(self.accept)

    @property
    def min_accepted(self) -> Optional[int]:
        return next((k for k, a in enumerate(self.accept) if a), None)

    def as_threshold(self) -> Optional[int]:
        """The ``m`` with ``accept[k] == (k >= m)``, or None if no such ``m``."""
        m = self.min_accepted
        if m is None or self.accept != tuple(k >= m for k in range(self.n + 1)):
            return None
        return m

    def to_rule(self) -> Rule:
        m = self.as_threshold()
        if m is None:
            raise DomainError("not a threshold rule")
        return Rule(self.n, m)


AnyRule = Union[TruthTableRule, CountRule]


def mask_to_profile(mask: int, n: int) -> tuple:
    return tuple(mask >> i & 1 for i in range(n))


def _popcounts(n: int) -> list[int]:
    return [bin(mask).count("1") for mask in range(1 << n)]


# -- axiom predicates --------------------------------------------------------


def check_monotonic(rule: AnyRule) -> bool:
    """No accepted profile has a rejected componentwise superset."""
    if isinstance(rule, CountRule):
        return all(rule.accept[k + 1] for k in range(rule.n) if rule.accept[k])
    # single-bit raises suffice: any V <= V' is reached by a chain of them
    table = rule.table
    for mask, accepted in enumerate(table):
        if accepted:
            for i in range(rule.n):
                if not table[mask | 1 << i]:
                    return False
    return True


def check_anonymous(rule: TruthTableRule) -> bool:
    """Every profile with the same approval count gets the same decision."""
    seen: dict[int, bool] = {}
    for mask, count in enumerate(_popcounts(rule.n)):
        if seen.setdefault(count, rule.table[mask]) != rule.table[mask]:
            return False
    return True


def check_concordant(rule: AnyRule) -> bool:
    """No two disjoint profiles are both accepted."""
    n = rule.n
    if isinstance(rule, CountRule):
        # disjoint profiles with counts a and b exist exactly when a + b <= n
        accepted = [k for k in range(n + 1) if rule.accept[k]]
        return not any(a + b <= n for a in accepted for b in accepted)
    full = (1 << n) - 1
    table = rule.table
    for mask, accepted in enumerate(table):
        if not accepted:
            continue
        rest = full & ~mask
        sub = rest
        while True:  # walk every submask of the complement, including 0
            if table[sub]:
                return False
            if sub == 0:
                break
            sub = (sub - 1) & rest
    return True


def is_consistent(rule: AnyRule) -> bool:
    """Decisive (by construction), monotone, anonymous and concordant."""
    if isinstance(rule, TruthTableRule) and not check_anonymous(rule):
        return False
    return check_monotonic(rule) and check_concordant(rule)


def count_quotient(rule: TruthTableRule) -> CountRule:
    """Collapse an anonymous truth table onto approval counts."""
    if not check_anonymous(rule):
        raise DomainError("only anonymous rules have a count quotient")
    accept = [False] * (rule.n + 1)
    for mask, count in enumerate(_popcounts(rule.n)):
        accept[count] = rule.table[mask]
    return CountRule(rule.n, tuple(accept))


# -- minimality --------------------------------------------------------------


def _as_count_rule(rule) -> CountRule:
    return CountRule.from_rule(rule) if isinstance(rule, Rule) else rule


def _covers(d_prime: AnyRule, d: AnyRule) -> bool:
    """For all V, V': d'(V') < d(V) implies |V'| < |V|."""
    if isinstance(d_prime, CountRule) and isinstance(d, CountRule):
        # both sides depend on counts only, and every count is realised
        sizes = list(range(d.n + 1))
        acc_p, acc = d_prime.accept, d.accept
    else:
        sizes = _popcounts(d.n)
        acc_p = d_prime.lift().table if isinstance(d_prime, CountRule) else d_prime.table
        acc = d.lift().table if isinstance(d, CountRule) else d.table
    return not any(
        acc_p[v_prime] < acc[v] and sizes[v_prime] >= sizes[v]
        for v_prime in range(len(sizes))
        for v in range(len(sizes))
    )


def minimality_prefers_literal(d_prime, d) -> bool:
    """Minimality evaluated by quantifying over all pairs of profiles.

    ``d'`` is preferred over ``d`` when every pair with ``d'(V') < d(V)``
    has ``|V'| < |V|`` but the same statement with the roles of ``d`` and
    ``d'`` exchanged fails.  Decisions are compared strictly; with a weak
    ``<=`` the pair (``V'`` rejected by ``d'``, ``V`` empty) refutes the
    relation for every rule that needs two or more approvals.
    """
    d_prime, d = _as_count_rule(d_prime), _as_count_rule(d)
    if d_prime.n != d.n:
        raise DimensionError(f"rules over {d_prime.n} and {d.n} agents")
    return _covers(d_prime, d) and not _covers(d, d_prime)


def minimality_prefers(d_prime, d) -> bool:
    """True iff Minimality prefers ``d_prime`` over ``d``.

    Count rules (and :class:`~constitution.core.Rule` values) must both be
    non-degenerate threshold rules; the relation is then just a comparison
    of thresholds.  Truth tables go through the quantified check.
    """
    if isinstance(d_prime, TruthTableRule) or isinstance(d, TruthTableRule):
        return minimality_prefers_literal(d_prime, d)
    d_prime, d = _as_count_rule(d_prime), _as_count_rule(d)
    if d_prime.n != d.n:
        raise DimensionError(f"rules over {d_prime.n} and {d.n} agents")
    m_prime, m = d_prime.as_threshold(), d.as_threshold()
    if m_prime is None or m is None:
        raise DomainError("threshold comparison needs two non-degenerate threshold rules")
    return m_prime < m


# -- enumeration -------------------------------------------------------------


@dataclass(frozen=True)
class EnumerationReport:
    n: int
    mode: Mode
    candidate_count: int
    survivors: tuple  # TruthTableRule or CountRule, in candidate-index order
    thresholds: tuple  # threshold m per survivor, None when not a threshold rule
    degenerate: tuple  # per survivor
    winner: Optional[Rule]
    violations: tuple = field(default=())

    @property
    def characterization_holds(self) -> bool:
        return not self.violations

    @property
    def nondegenerate_thresholds(self) -> list[int]:
        return sorted(m for m, deg in zip(self.thresholds, self.degenerate) if not deg)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode.value,
            "candidates": self.candidate_count,
            "survivors": [
                {"threshold": m, "degenerate": deg}
                for m, deg in sorted(
                    zip(self.thresholds, self.degenerate),
                    key=lambda item: (item[1], item[0] or 0),
                )
            ],
            "characterization_holds": self.characterization_holds,
            "violations": list(self.violations),
            "minimality_winner": None if self.winner is None else {"n": self.winner.n, "m": self.winner.m},
        }


def _candidate(n: int, mode: Mode, index: int) -> AnyRule:
    if mode is Mode.FULL_TABLE:
        return TruthTableRule.from_index(n, index)
    return CountRule.from_index(n, index)


def _survivor_indices(n: int, mode: Mode, start: int, stop: int) -> list[int]:
    return [i for i in range(start, stop) if is_consistent(_candidate(n, mode, i))]


def candidate_count(n: int, mode: Mode) -> int:
    return 1 << (1 << n) if mode is Mode.FULL_TABLE else 1 << (n + 1)


def _check_capacity(n: int, mode: Mode) -> None:
    bound = FULL_TABLE_MAX_N if mode is Mode.FULL_TABLE else COUNT_ONLY_MAX_N
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"community size must be a positive integer, got {n!r}")
    if n > bound:
        raise CapacityError(f"{mode.value} enumeration supports n <= {bound}, got n={n}")


def _minimality_winner(rules: list) -> Optional[Rule]:
    """The rule preferred over every other and with nothing preferred over it."""
    for cand in rules:
        others = [r for r in rules if r is not cand]
        if all(minimality_prefers(cand, r) for r in others) and not any(
            minimality_prefers(r, cand) for r in others
        ):
            return _as_count_rule(cand).to_rule() if not isinstance(cand, Rule) else cand
    return None


def enumerate_consistent_rules(n: int, mode: Mode = Mode.COUNT_ONLY, workers: int = 1) -> EnumerationReport:
    """Exhaustively filter the candidate rules for ``n`` agents by the axioms.

    ``mode`` selects full truth tables (``n <= 4``) or count rules
    (``n <= 20``).  With ``workers > 1`` the index range is split across
    processes; the report does not depend on the split.
    """
    mode = Mode(mode)
    _check_capacity(n, mode)
    total = candidate_count(n, mode)
    if workers > 1 and total > 1024:
        step = -(-total // (workers * 4))
        bounds = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_survivor_indices, *zip(*[(n, mode, lo, hi) for lo, hi in bounds]))
            indices = [i for part in parts for i in part]
    else:
        indices = _survivor_indices(n, mode, 0, total)

    survivors, thresholds, degenerate, violations = [], [], [], []
    quotients = []
    for index in sorted(indices):
        rule = _candidate(n, mode, index)
        quotient = count_quotient(rule) if isinstance(rule, TruthTableRule) else rule
        m = quotient.as_threshold()
        survivors.append(rule)
        quotients.append(quotient)
        thresholds.append(m)
        degenerate.append(quotient.is_degenerate)
        if not quotient.is_degenerate and (m is None or m < majority_count(n)):
            violations.append(f"survivor {quotient.accept} is not a strict-majority threshold rule")

    live = [q for q, deg in zip(quotients, degenerate) if not deg]
    winner = _minimality_winner(live) if not violations else None
    return EnumerationReport(
        n=n,
        mode=mode,
        candidate_count=total,
        survivors=tuple(survivors),
        thresholds=tuple(thresholds),
        degenerate=tuple(degenerate),
        winner=winner,
        violations=tuple(violations),
    )


@functools.lru_cache(maxsize=None)
def _cached_report(n: int) -> EnumerationReport:
    return enumerate_consistent_rules(n, Mode.COUNT_ONLY)


def founding_rule(n: int) -> Rule:
    """Simple majority, checked to be the unique Minimality-optimal rule.

    For ``n`` within the count enumeration bound the check runs against the
    enumerated survivors; beyond it, against the threshold family those
    survivors are known to form.
    """
    founding = Rule(n, majority_count(n))
    if n <= COUNT_ONLY_MAX_N:
        report = _cached_report(n)
        if not report.characterization_holds:
            raise AssertionError("; ".join(report.violations))
        winner = report.winner
    else:
        winner = _minimality_winner([Rule(n, m) for m in range(majority_count(n), n + 1)])
    if winner != founding:
        raise AssertionError(f"Minimality selected {winner}, expected {founding}")
    return founding
