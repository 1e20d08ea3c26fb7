import itertools
import json

import pytest

from constitution.axioms import (
    CountRule,
    Mode,
    TruthTableRule,
    check_anonymous,
    check_concordant,
    check_monotonic,
    count_quotient,
    enumerate_consistent_rules,
    founding_rule,
    minimality_prefers,
    minimality_prefers_literal,
)
from constitution.core import CapacityError, DimensionError, DomainError, Rule


def profiles(n):
    return list(itertools.product((0, 1), repeat=n))


def brute_monotonic(rule):
    return not any(
        rule(v) and not rule(w)
        for v in profiles(rule.n)
        for w in profiles(rule.n)
        if all(a <= b for a, b in zip(v, w))
    )


def brute_concordant(rule):
    return not any(
        rule(v) and rule(w)
        for v in profiles(rule.n)
        for w in profiles(rule.n)
        if all(a + b <= 1 for a, b in zip(v, w))
    )


def all_count_rules(n):
    return [CountRule.from_index(n, i) for i in range(1 << (n + 1))]


# -- predicates --------------------------------------------------------------


def test_monotonic_examples():
    assert check_monotonic(CountRule.threshold(3, 2))
    assert not check_monotonic(CountRule(3, (False, True, False, False)))
    only_10 = TruthTableRule.from_function(2, lambda v: v == (1, 0))
    assert not check_monotonic(only_10)


def test_anonymous_examples():
    assert check_anonymous(CountRule.threshold(4, 3).lift())
    one_sided = TruthTableRule.from_function(2, lambda v: v == (1, 0))
    assert not check_anonymous(one_sided)
    dictator = TruthTableRule.from_function(3, lambda v: v[0] == 1)
    assert not check_anonymous(dictator)


@pytest.mark.parametrize("n, m, expected", [(3, 2, True), (3, 1, False), (4, 2, False), (4, 3, True)])
def test_concordant_examples(n, m, expected):
    assert check_concordant(CountRule.threshold(n, m)) is expected


@pytest.mark.parametrize("n", range(1, 6))
def test_count_predicates_match_profile_level(n):
    for rule in all_count_rules(n):
        table = rule.lift()
        assert check_monotonic(rule) == check_monotonic(table) == brute_monotonic(rule)
        assert check_concordant(rule) == check_concordant(table) == brute_concordant(rule)
        assert check_anonymous(table)
        assert count_quotient(table) == rule


@pytest.mark.parametrize("n", [1, 2, 3])
def test_table_predicates_match_brute_force(n):
    for index in range(1 << (1 << n)):
        rule = TruthTableRule.from_index(n, index)
        assert check_monotonic(rule) == brute_monotonic(rule)
        assert check_concordant(rule) == brute_concordant(rule)


def test_count_quotient_needs_anonymity():
    with pytest.raises(DomainError):
        count_quotient(TruthTableRule.from_function(2, lambda v: v == (1, 0)))


# -- minimality --------------------------------------------------------------


@pytest.mark.parametrize("m_prime, m, expected", [(3, 4, True), (4, 3, False), (3, 3, False)])
def test_minimality_examples(m_prime, m, expected):
    d_prime, d = CountRule.threshold(5, m_prime), CountRule.threshold(5, m)
    assert minimality_prefers(d_prime, d) is expected
    assert minimality_prefers_literal(d_prime, d) is expected
    assert minimality_prefers(Rule(5, m_prime), Rule(5, m)) is expected


def test_minimality_dimension_mismatch():
    with pytest.raises(DimensionError):
        minimality_prefers(CountRule.threshold(5, 3), CountRule.threshold(4, 3))
    with pytest.raises(DimensionError):
        minimality_prefers_literal(CountRule.threshold(5, 3), CountRule.threshold(4, 3))


def test_minimality_shortcut_needs_thresholds():
    with pytest.raises(DomainError):
        minimality_prefers(CountRule(3, (False,) * 4), CountRule.threshold(3, 2))


def test_weak_reading_of_minimality_is_degenerate():
    # with "d'(V') <= d(V) implies |V'| <= |V|", V = 0 and any V' rejected by d'
    # with |V'| >= 1 refute the premise for every rule needing two approvals
    def weak(dp, d):
        return all(
            not (dp.accept[b] <= d.accept[a]) or b <= a for a in range(d.n + 1) for b in range(d.n + 1)
        )

    for n in range(2, 9):
        for mp, m in itertools.product(range(n // 2 + 1, n + 1), repeat=2):
            dp, d = CountRule.threshold(n, mp), CountRule.threshold(n, m)
            if mp >= 2:
                assert not weak(dp, d)


@pytest.mark.parametrize("n", range(1, 13))
def test_minimality_literal_agrees_with_shortcut(n):
    rules = [CountRule.threshold(n, m) for m in range(n // 2 + 1, n + 1)]
    for a, b in itertools.product(rules, repeat=2):
        assert minimality_prefers(a, b) == minimality_prefers_literal(a, b)


@pytest.mark.parametrize("n", range(1, 5))
def test_minimality_on_truth_tables_agrees_with_counts(n):
    report = enumerate_consistent_rules(n, Mode.FULL_TABLE)
    live = [r for r, deg in zip(report.survivors, report.degenerate) if not deg]
    for a, b in itertools.product(live, repeat=2):
        assert minimality_prefers(a, b) == minimality_prefers(count_quotient(a), count_quotient(b))


@pytest.mark.parametrize("n", range(1, 13))
def test_minimality_irreflexive_antisymmetric(n):
    report = enumerate_consistent_rules(n)
    live = [r for r, deg in zip(report.survivors, report.degenerate) if not deg]
    for a in live:
        assert not minimality_prefers(a, a)
    for a, b in itertools.product(live, repeat=2):
        assert not (minimality_prefers(a, b) and minimality_prefers(b, a))


# -- enumeration -------------------------------------------------------------


@pytest.mark.parametrize(
    "n, mode, thresholds, count",
    [
        (3, Mode.COUNT_ONLY, [2, 3], 16),
        (2, Mode.FULL_TABLE, [2], 16),
        (4, Mode.COUNT_ONLY, [3, 4], 32),
    ],
)
def test_enumeration_examples(n, mode, thresholds, count):
    report = enumerate_consistent_rules(n, mode)
    assert report.candidate_count == count
    assert report.nondegenerate_thresholds == thresholds
    assert sum(report.degenerate) == 1
    assert len(report.survivors) == len(thresholds) + 1
    assert report.characterization_holds


@pytest.mark.parametrize("n", range(1, 13))
def test_characterization_count_only(n):
    report = enumerate_consistent_rules(n, Mode.COUNT_ONLY)
    assert report.nondegenerate_thresholds == list(range(n // 2 + 1, n + 1))
    assert report.winner == Rule(n, n // 2 + 1)


@pytest.mark.parametrize("n", range(1, 5))
def test_anonymity_quotient_full_table(n):
    full = enumerate_consistent_rules(n, Mode.FULL_TABLE)
    counts = enumerate_consistent_rules(n, Mode.COUNT_ONLY)
    assert all(check_anonymous(r) for r in full.survivors)
    assert sorted(count_quotient(r).accept for r in full.survivors) == sorted(r.accept for r in counts.survivors)


def test_partitioned_enumeration_is_identical():
    single = enumerate_consistent_rules(10, Mode.COUNT_ONLY)
    split = enumerate_consistent_rules(10, Mode.COUNT_ONLY, workers=2)
    assert single == split


@pytest.mark.parametrize("n, mode", [(5, Mode.FULL_TABLE), (21, Mode.COUNT_ONLY), (0, Mode.COUNT_ONLY)])
def test_enumeration_bounds(n, mode):
    with pytest.raises((CapacityError, DomainError)):
        enumerate_consistent_rules(n, mode)


def test_report_document():
    doc = enumerate_consistent_rules(3, "count").to_dict()
    assert json.loads(json.dumps(doc)) == doc
    assert doc["survivors"] == [
        {"threshold": 2, "degenerate": False},
        {"threshold": 3, "degenerate": False},
        {"threshold": None, "degenerate": True},
    ]
    assert doc["minimality_winner"] == {"n": 3, "m": 2}


@pytest.mark.parametrize("n, m", [(5, 3), (4, 3), (1, 1), (12, 7), (25, 13)])
def test_founding_rule(n, m):
    assert founding_rule(n) == Rule(n, m)
