"""Property sweeps checking the amendment closed forms against the oracle.

For small communities every ordered ideal profile on the grid is visited;
larger ones are covered by seeded random samples (see
:func:`~constitution.generation.mixed_profile`).  Each profile is checked at
every grid threshold as the rule in force.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field

from .amendment import (
    Method,
    PropertyViolation,
    condorcet_amend,
    conservative_amend,
    decrease_candidates,
    increase_candidates,
    iterate_to_fixpoint,
    oracle_amend,
    simple_majority,
    survivor_levels,
)
from .core import CycleError, Decision, Rule, decide, format_fraction, grid_tuple, majority_count
from .generation import mixed_profile
from .preferences import IdealProfile, supporters, undominated_keys

CHECKS = (
    "condorcet_vs_oracle",
    "conservative_vs_oracle",
    "exclusivity",
    "posterior_consistency",
    "idempotence",
    "iterate_equivalence",
    "trajectory_monotone",
    "domination_asymmetry",
    "undominated_nonempty",
)
MAX_EXAMPLES = 10

EXHAUSTIVE_MAX_N = 7
STRUCTURAL_EXHAUSTIVE_MAX_N = 8
DEFAULT_SAMPLES = 10_000


@dataclass
class VerificationReport:
    checked: Counter = field(default_factory=Counter)
    violations: Counter = field(default_factory=Counter)
    examples: list = field(default_factory=list)
    max_approval: Counter = field(default_factory=Counter)  # agree / disagree
    regimes: dict = field(default_factory=dict)  # n -> description

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def record(self, check: str, passed: bool, context=None) -> None:
        """Count one evaluation; ``context`` is a zero-argument callable."""
        self.checked[check] += 1
        if not passed:
            self.violations[check] += 1
            if len(self.examples) < MAX_EXAMPLES:
                self.examples.append({"check": check, **(context() if context else {})})

    def merge(self, other: "VerificationReport") -> None:
        self.checked.update(other.checked)
        self.violations.update(other.violations)
        self.max_approval.update(other.max_approval)
        self.regimes.update(other.regimes)
        room = MAX_EXAMPLES - len(self.examples)
        self.examples.extend(other.examples[:room])

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "regimes": {str(n): self.regimes[n] for n in sorted(self.regimes)},
            "checks": {
                name: {"checked": self.checked[name], "violations": self.violations[name]} for name in CHECKS
            },
            "max_approval_diagnostic": {
                "agree": self.max_approval["agree"],
                "disagree": self.max_approval["disagree"],
            },
            "examples": self.examples,
        }

    def to_text(self) -> str:
        lines = [f"{'check':<24} {'checked':>10} {'violations':>10}"]
        for name in CHECKS:
            lines.append(f"{name:<24} {self.checked[name]:>10} {self.violations[name]:>10}")
        lines.append(
            f"max-approval choice agrees with undominated choice: "
            f"{self.max_approval['agree']} agree, {self.max_approval['disagree']} disagree"
        )
        lines.append("OK" if self.ok else "VIOLATIONS FOUND")
        return "\n".join(lines)


def _context(ideals: IdealProfile, rule: Rule | None = None, **extra) -> dict:
    ctx = {"ideals": [format_fraction(x) for x in ideals.ideals]}
    if rule is not None:
        ctx["delta"] = format_fraction(rule.delta)
    ctx.update(extra)
    return ctx


def check_at(rule: Rule, ideals: IdealProfile, report: VerificationReport) -> None:
    """Closed forms against the oracle with ``rule`` in force."""
    def ctx(**kw):
        # values may be zero-argument callables, evaluated only on failure
        return lambda: _context(ideals, rule, **{k: v() if callable(v) else v for k, v in kw.items()})

    up, down = increase_candidates(rule, ideals), decrease_candidates(rule, ideals)
    report.record("exclusivity", not (up and down), ctx())
    if up and down:
        return

    survivors = survivor_levels(rule, ideals)
    closed = {Method.CONDORCET: condorcet_amend(rule, ideals), Method.CONSERVATIVE: conservative_amend(rule, ideals)}
    for method, name in ((Method.CONDORCET, "condorcet_vs_oracle"), (Method.CONSERVATIVE, "conservative_vs_oracle")):
        got = closed[method]
        try:
            expected, diagnostic = oracle_amend(rule, ideals, method, survivors)
        except PropertyViolation as exc:
            report.record(name, False, ctx(error=str(exc)))
            continue
        agree = got.amended == expected.amended and got.result == expected.result
        if method is Method.CONDORCET and got.amended:
            agree = agree and diagnostic.undominated == (got.result.delta,)
            report.max_approval["agree" if diagnostic.max_approval_agrees else "disagree"] += 1
        report.record(
            name,
            agree,
            ctx(closed_form=lambda: format_fraction(got.result.delta), oracle=lambda: format_fraction(expected.result.delta)),
        )

    for outcome in closed.values():
        if outcome.amended:
            ok = (
                decide(outcome.rule, outcome.ballot) is Decision.ACCEPT
                and decide(outcome.new_rule, outcome.ballot) is Decision.ACCEPT
            )
            report.record("posterior_consistency", ok, ctx(new_delta=lambda: format_fraction(outcome.new_rule.delta)))


def check_from_majority(ideals: IdealProfile, report: VerificationReport) -> None:
    """Idempotence and iterate-from-majority equivalence starting at delta = 1/2."""
    n = ideals.n
    start = simple_majority(n)
    first = condorcet_amend(start, ideals)
    second = condorcet_amend(first.result, ideals)
    report.record("idempotence", not second.amended, lambda: _context(ideals, first.result))

    try:
        path = iterate_to_fixpoint(start, ideals, Method.CONSERVATIVE)
    except CycleError as exc:
        message = str(exc)
        report.record("iterate_equivalence", False, lambda: _context(ideals, error=message))
        return
    report.record(
        "iterate_equivalence",
        path.terminal == first.result,
        lambda: _context(
            ideals, terminal=format_fraction(path.terminal.delta), condorcet=format_fraction(first.result.delta)
        ),
    )
    deltas = path.deltas
    monotone = all(a < b for a, b in zip(deltas, deltas[1:])) and len(path) <= len(grid_tuple(n))
    report.record("trajectory_monotone", monotone, lambda: _context(ideals, path=[format_fraction(x) for x in deltas]))


def check_structure(ideals: IdealProfile, report: VerificationReport) -> None:
    """Domination asymmetry over grid pairs and a nonempty undominated set."""
    n, grid = ideals.n, grid_tuple(ideals.n)
    low = majority_count(n)
    levels = range(low, n + 1)
    for lp, lq in itertools.combinations(levels, 2):
        both = 2 * supporters(ideals.levels, lp, lq) > n and 2 * supporters(ideals.levels, lq, lp) > n
        report.record("domination_asymmetry", not both, lambda: _context(ideals, pair=[format_fraction(grid[lp - low]), format_fraction(grid[lq - low])]))
    report.record("undominated_nonempty", bool(undominated_keys(ideals.levels, levels, n)), lambda: _context(ideals))


def check_profile(ideals: IdealProfile, report: VerificationReport) -> None:
    for rule in (Rule(ideals.n, m) for m in range(majority_count(ideals.n), ideals.n + 1)):
        check_at(rule, ideals, report)
    check_from_majority(ideals, report)
    check_structure(ideals, report)


def all_profiles(n: int):
    """Every ordered assignment of grid ideal points to ``n`` agents."""
    for levels in itertools.product(range(majority_count(n), n + 1), repeat=n):
        yield IdealProfile.from_levels(n, levels)


def sampled_profiles(n: int, samples: int, seed: int):
    rng = random.Random(seed * 1_000_003 + n)
    for index in range(samples):
        yield mixed_profile(rng, n, index)


def structural_sweep(n: int, report: VerificationReport) -> None:
    """Asymmetry and nonemptiness for every multiset of grid ideal points.

    Both properties only depend on how many agents sit at each grid point,
    so one representative per multiset covers every ordered profile.
    """
    for combo in itertools.combinations_with_replacement(range(majority_count(n), n + 1), n):
        check_structure(IdealProfile.from_levels(n, combo), report)


def verify_n(n: int, samples: int = DEFAULT_SAMPLES, seed: int = 0, exhaustive_max: int = EXHAUSTIVE_MAX_N,
             structural_max: int = STRUCTURAL_EXHAUSTIVE_MAX_N) -> VerificationReport:
    report = VerificationReport()
    if n <= exhaustive_max:
        profiles = all_profiles(n)
        report.regimes[n] = f"exhaustive ({len(grid_tuple(n)) ** n} profiles)"
    else:
        profiles = sampled_profiles(n, samples, seed)
        report.regimes[n] = f"sampled ({samples} profiles, seed {seed})"
    for ideals in profiles:
        check_profile(ideals, report)
    if exhaustive_max < n <= structural_max:
        structural_sweep(n, report)
        report.regimes[n] += "; structure exhaustive over multisets"
    return report


def verify(ns, samples: int = DEFAULT_SAMPLES, seed: int = 0, exhaustive_max: int = EXHAUSTIVE_MAX_N,
           structural_max: int = STRUCTURAL_EXHAUSTIVE_MAX_N) -> VerificationReport:
    """Run every check for each community size in ``ns``."""
    report = VerificationReport()
    for n in ns:
        report.merge(verify_n(n, samples, seed, exhaustive_max, structural_max))
    return report
