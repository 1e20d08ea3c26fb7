import itertools
import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from constitution import amendment as amendment_mod
from constitution.amendment import (
    AmendmentOutcome,
    Direction,
    Method,
    PropertyViolation,
    Trajectory,
    amend,
    condorcet_amend,
    conservative_amend,
    iterate_to_fixpoint,
    oracle_amend,
    posterior_consistent,
    simple_majority,
)
from constitution.core import CycleError, Decision, DimensionError, Rule, decide, delta_grid, snap_delta
from constitution.preferences import IdealProfile, Preference, amendment_ballot, compare

HALF, THREE_FIFTHS, FOUR_FIFTHS = F(1, 2), F(3, 5), F(4, 5)


def profile(*values):
    return IdealProfile(tuple(values))


def rule_at(n, delta):
    return snap_delta(n, delta)


def reference_amendment(delta, ideals, method):
    """Independent brute force working only on rationals and public predicates."""
    n = ideals.n
    passing = []
    for x in delta_grid(n):
        if x == delta:
            continue
        ballot = amendment_ballot(ideals, delta, x)
        if decide(rule_at(n, delta), ballot) is Decision.ACCEPT and decide(rule_at(n, x), ballot) is Decision.ACCEPT:
            passing.append(x)
    if not passing:
        return delta
    if method is Method.CONDORCET:
        def beats(y, x):
            return 2 * sum(compare(i, y, x) is Preference.FIRST for i in ideals.ideals) > n

        picks = [x for x in passing if not any(beats(y, x) for y in passing if y != x)]
    else:
        gap = min(abs(x - delta) for x in passing)
        picks = [x for x in passing if abs(x - delta) == gap]
    assert len(picks) == 1, picks
    return picks[0]


def grid_profiles(n):
    return st.lists(st.sampled_from(delta_grid(n)), min_size=n, max_size=n).map(lambda xs: IdealProfile(tuple(xs)))


community = st.integers(1, 15).flatmap(
    lambda n: st.tuples(st.sampled_from(delta_grid(n)), grid_profiles(n))
)


# -- worked examples ---------------------------------------------------------


def test_mostly_demanding_community_raises_once():
    ideals = profile(FOUR_FIFTHS, FOUR_FIFTHS, FOUR_FIFTHS, FOUR_FIFTHS, HALF)
    out = condorcet_amend(rule_at(5, HALF), ideals)
    assert out.result.delta == THREE_FIFTHS
    assert out.direction is Direction.INCREASE
    assert out.ballot == (1, 1, 1, 1, 0)
    assert out.support == 4


def test_unanimous_demand_from_majority():
    ideals = profile(*[FOUR_FIFTHS] * 5)
    assert condorcet_amend(rule_at(5, HALF), ideals).result.delta == FOUR_FIFTHS
    assert conservative_amend(rule_at(5, HALF), ideals).result.delta == THREE_FIFTHS
    path = iterate_to_fixpoint(rule_at(5, HALF), ideals, Method.CONSERVATIVE)
    assert path.deltas == [HALF, THREE_FIFTHS, FOUR_FIFTHS]
    assert not path.steps[-1][1].amended


def test_unanimous_relaxation_from_four_fifths():
    ideals = profile(*[HALF] * 5)
    assert condorcet_amend(rule_at(5, FOUR_FIFTHS), ideals).result.delta == HALF
    assert conservative_amend(rule_at(5, FOUR_FIFTHS), ideals).result.delta == THREE_FIFTHS
    path = iterate_to_fixpoint(rule_at(5, FOUR_FIFTHS), ideals)
    assert path.deltas == [FOUR_FIFTHS, THREE_FIFTHS, HALF]
    assert all(o.direction is Direction.DECREASE for _, o in path.steps[:-1])


def test_content_community_retains():
    ideals = profile(*[HALF] * 5)
    for method in Method:
        out = amend(rule_at(5, HALF), ideals, method)
        assert not out.amended
        assert out.result == rule_at(5, HALF)
        assert out.to_dict()["decision"] == "retain"


def test_posterior_consistency_examples():
    ideals = profile(FOUR_FIFTHS, FOUR_FIFTHS, FOUR_FIFTHS, FOUR_FIFTHS, HALF)
    assert not posterior_consistent(HALF, FOUR_FIFTHS, ideals)
    assert posterior_consistent(HALF, THREE_FIFTHS, ideals)


def test_oracle_matches_example_and_reports():
    ideals = profile(FOUR_FIFTHS, FOUR_FIFTHS, FOUR_FIFTHS, FOUR_FIFTHS, HALF)
    outcome, diag = oracle_amend(rule_at(5, HALF), ideals)
    assert outcome.result.delta == THREE_FIFTHS
    assert diag.survivors == (THREE_FIFTHS,)
    assert diag.support == {THREE_FIFTHS: 4}
    assert diag.max_approval_agrees is True
    assert json.loads(json.dumps(diag.to_dict()))["choice"] == "3/5"


def test_oracle_retains_without_survivors():
    outcome, diag = oracle_amend(rule_at(5, HALF), profile(*[HALF] * 5), Method.CONSERVATIVE)
    assert not outcome.amended
    assert diag.survivors == () and diag.choice is None and diag.max_approval_agrees is None


def test_max_approval_reading_can_disagree():
    # everyone wants 4/5: both 3/5 and 4/5 collect five approvals, so the
    # approval count alone cannot single out the Condorcet pick
    _, diag = oracle_amend(rule_at(5, HALF), profile(*[FOUR_FIFTHS] * 5))
    assert diag.choice == FOUR_FIFTHS
    assert diag.max_approval == (THREE_FIFTHS, FOUR_FIFTHS)
    assert diag.max_approval_agrees is False


# -- closed forms against the reference --------------------------------------


@pytest.mark.parametrize("n", range(1, 7))
def test_closed_forms_match_reference_exhaustive(n):
    grid = delta_grid(n)
    for values in itertools.combinations_with_replacement(grid, n):
        ideals = IdealProfile(values)
        for delta in grid:
            rule = rule_at(n, delta)
            for method in Method:
                assert amend(rule, ideals, method).result.delta == reference_amendment(delta, ideals, method)


@settings(max_examples=300, deadline=None)
@given(community)
def test_closed_forms_match_oracle(case):
    delta, ideals = case
    rule = rule_at(ideals.n, delta)
    for method in Method:
        expected, _ = oracle_amend(rule, ideals, method)
        assert amend(rule, ideals, method) == expected


@settings(max_examples=300, deadline=None)
@given(community)
def test_amendment_properties(case):
    delta, ideals = case
    rule = rule_at(ideals.n, delta)
    cond, cons = condorcet_amend(rule, ideals), conservative_amend(rule, ideals)
    # both methods agree on whether to move and in which direction
    assert cond.direction is cons.direction
    for out in (cond, cons):
        if out.amended:
            assert posterior_consistent(delta, out.result.delta, ideals)


@settings(max_examples=300, deadline=None)
@given(community)
def test_increasing_condorcet_amendment_idempotent(case):
    delta, ideals = case
    first = condorcet_amend(rule_at(ideals.n, delta), ideals)
    if first.direction is Direction.INCREASE or delta == HALF:
        assert not condorcet_amend(first.result, ideals).amended


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 15).flatmap(grid_profiles))
def test_condorcet_idempotent_from_majority(ideals):
    first = condorcet_amend(simple_majority(ideals.n), ideals).result
    assert not condorcet_amend(first, ideals).amended


def test_decreasing_amendment_may_continue():
    # from 4/5 only 3/5 gathers a qualifying majority; once there, 1/2 does too
    ideals = profile(HALF, HALF, HALF, HALF, THREE_FIFTHS)
    first = condorcet_amend(rule_at(5, FOUR_FIFTHS), ideals)
    assert first.result.delta == THREE_FIFTHS
    assert condorcet_amend(first.result, ideals).result.delta == HALF


@settings(max_examples=300, deadline=None)
@given(community)
def test_conservative_iteration_from_majority_reaches_condorcet(case):
    _, ideals = case
    start = simple_majority(ideals.n)
    path = iterate_to_fixpoint(start, ideals, Method.CONSERVATIVE)
    assert path.terminal == condorcet_amend(start, ideals).result
    deltas = path.deltas
    assert deltas == sorted(deltas) or deltas == sorted(deltas, reverse=True)
    assert len(set(deltas)) == len(deltas)


# -- errors and documents ----------------------------------------------------


def test_dimension_mismatch():
    ideals = profile(*[HALF] * 5)
    for call in (
        lambda: condorcet_amend(Rule(4, 3), ideals),
        lambda: oracle_amend(Rule(4, 3), ideals),
        lambda: iterate_to_fixpoint(Rule(4, 3), ideals),
    ):
        with pytest.raises(DimensionError):
            call()


def test_outcome_invariants():
    rule = Rule(5, 3)
    with pytest.raises(PropertyViolation):
        AmendmentOutcome(rule, Rule(5, 3), Direction.INCREASE, 5, (1,) * 5)
    with pytest.raises(PropertyViolation):
        AmendmentOutcome(rule, Rule(5, 5), Direction.INCREASE, 4, (1, 1, 1, 1, 0))
    with pytest.raises(PropertyViolation):
        AmendmentOutcome(rule, Rule(5, 4), Direction.INCREASE, 3, (1, 1, 1, 0, 0))
    with pytest.raises(PropertyViolation):
        AmendmentOutcome(rule, None, Direction.INCREASE)
    assert AmendmentOutcome(rule, Rule(5, 4), Direction.INCREASE, 4, (1, 1, 1, 1, 0)).amended


@settings(max_examples=200, deadline=None)
@given(community, st.sampled_from(list(Method)))
def test_outcome_document_round_trip(case, method):
    delta, ideals = case
    out = amend(rule_at(ideals.n, delta), ideals, method)
    assert AmendmentOutcome.from_dict(json.loads(json.dumps(out.to_dict()))) == out


def test_trajectory_document():
    path = iterate_to_fixpoint(rule_at(5, HALF), profile(*[FOUR_FIFTHS] * 5))
    doc = path.to_dict()
    assert doc["path"] == ["1/2", "3/5", "4/5"]
    assert doc["terminal"] == "4/5" and doc["terminal_m"] == 5
    assert len(doc["steps"]) == len(path) == 3
    assert isinstance(path, Trajectory)


def test_non_settling_iteration_raises(monkeypatch):
    def flip(rule, ideals, method):
        target = Rule(rule.n, rule.m + 1 if rule.m < rule.n else rule.n // 2 + 1)
        ballot = (1,) * rule.n
        direction = Direction.INCREASE if target.m > rule.m else Direction.DECREASE
        return AmendmentOutcome(rule, target, direction, rule.n, ballot)

    monkeypatch.setattr(amendment_mod, "amend", flip)
    with pytest.raises(CycleError):
        iterate_to_fixpoint(rule_at(5, HALF), profile(*[HALF] * 5))


def test_iteration_above_majority_can_overshoot_condorcet():
    # the iterate-equals-Condorcet property is specific to starting at 1/2
    ideals = profile(HALF, HALF, HALF, HALF, THREE_FIFTHS)
    start = rule_at(5, FOUR_FIFTHS)
    assert condorcet_amend(start, ideals).result.delta == THREE_FIFTHS
    assert iterate_to_fixpoint(start, ideals).deltas == [FOUR_FIFTHS, THREE_FIFTHS, HALF]
