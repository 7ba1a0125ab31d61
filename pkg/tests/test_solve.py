from __future__ import annotations

import random

import pytest

import oracles
from pbdonations import (
    Aggregator,
    Bundle,
    Infeasible,
    UtilityFlavor,
    build_instance,
    cowinners,
    is_cowinner,
    is_exhaustive,
    is_feasible,
    solve_plain,
    tie_break_less,
)
from pbdonations.axioms import FuzzConfig, random_instance
from conftest import ALL_RULES

ADD = UtilityFlavor.ADDITIVE
MAX = UtilityFlavor.MAXIMUM
SUM = Aggregator.SUM
MIN = Aggregator.MIN


def test_theorem1_all_rules(theorem1):
    for flavor, agg in ALL_RULES:
        assert solve_plain(flavor, agg, theorem1) == Bundle.of([0, 2])


def test_example1_add_sum(example1):
    assert solve_plain(ADD, SUM, example1) == Bundle.of([0, 1])


def test_single_project_instance():
    inst = build_instance([3], [[2], [1]], budget=3)
    for flavor, agg in ALL_RULES:
        assert solve_plain(flavor, agg, inst) == Bundle.of([0])


def test_infeasible_instance_raises():
    inst = build_instance([5], [[1]], budget=1, types=[[0]], lower=[1], upper=[1])
    with pytest.raises(Infeasible):
        solve_plain(ADD, SUM, inst)
    with pytest.raises(Infeasible):
        cowinners(ADD, SUM, inst)


def test_enumeration_resource_cap():
    from pbdonations import ResourceLimit

    m = 26
    inst = build_instance([1] * m, [[1] * m], budget=m)
    with pytest.raises(ResourceLimit):
        solve_plain(ADD, SUM, inst)


def test_cowinners_theorem1_donated(theorem1_donated):
    expected = {Bundle.of([0, 1]), Bundle.of([0, 2])}
    assert cowinners(MAX, SUM, theorem1_donated) == frozenset(expected)
    # independent enumeration agrees
    assert oracles.cowinner_set("max", "sum", theorem1_donated) == {(0, 1), (0, 2)}


def test_cowinners_example1(example1):
    assert cowinners(ADD, SUM, example1) == frozenset({Bundle.of([0, 1])})
    # runner-up score is 16, strictly below 19
    others = [c for c in oracles.all_feasible(example1) if c != (0, 1)]
    assert max(oracles.score("add", "sum", example1, c) for c in others) == 16


def test_cowinners_singleton():
    inst = build_instance([1], [[1]], budget=1)
    assert cowinners(ADD, SUM, inst) == frozenset({Bundle.of([0])})


def test_is_cowinner_theorem1(theorem1, theorem1_donated):
    for flavor, agg in ALL_RULES:
        assert is_cowinner(flavor, agg, theorem1, Bundle.of([0, 2]))
    assert not is_cowinner(ADD, SUM, theorem1_donated, Bundle.of([0, 2]))
    # still tied at the top under the maximum-sum rule
    assert is_cowinner(MAX, SUM, theorem1_donated, Bundle.of([0, 2]))


def test_is_cowinner_infeasible_bundle(theorem1):
    assert not is_cowinner(ADD, SUM, theorem1, Bundle.of([0, 1]))


def test_is_cowinner_self_consistency(theorem1_donated, example1):
    for inst in (theorem1_donated, example1):
        for flavor, agg in ALL_RULES:
            assert is_cowinner(flavor, agg, inst, solve_plain(flavor, agg, inst))


def test_tie_break_order(example1):
    # score dominance
    assert tie_break_less(example1, ADD, SUM, Bundle.of([0, 1]), Bundle.of([0, 2]))
    assert not tie_break_less(example1, ADD, SUM, Bundle.of([0, 2]), Bundle.of([0, 1]))
    # cardinality under equal score
    flat = build_instance([1, 1, 1], [[0, 0, 0]], budget=3)
    assert tie_break_less(flat, ADD, SUM, Bundle.of([0, 1, 2]), Bundle.of([0, 1]))
    # lexicographic last
    assert tie_break_less(flat, ADD, SUM, Bundle.of([0, 1]), Bundle.of([0, 2]))
    assert not tie_break_less(flat, ADD, SUM, Bundle.of([0, 1]), Bundle.of([0, 1]))


def test_matches_oracle_on_random_instances():
    rng = random.Random(11)
    cfg = FuzzConfig(seed=11, trials=0, max_projects=6, max_voters=4, max_types=2)
    agree = 0
    for _ in range(150):
        inst = random_instance(rng, cfg)
        for flavor, agg in ALL_RULES:
            fl, ag = ("add" if flavor is ADD else "max"), ("sum" if agg is SUM else "min")
            expected = oracles.best_bundle(fl, ag, inst)
            if expected is None:
                with pytest.raises(Infeasible):
                    solve_plain(flavor, agg, inst)
            else:
                got = solve_plain(flavor, agg, inst)
                assert got.members == expected, (inst, flavor, agg)
                assert {tuple(b.members) for b in cowinners(flavor, agg, inst)} == (
                    oracles.cowinner_set(fl, ag, inst)
                )
                agree += 1
    assert agree > 100


def test_output_always_feasible_and_exhaustive():
    rng = random.Random(23)
    cfg = FuzzConfig(seed=23, trials=0, max_projects=6, max_voters=3, max_types=2)
    for _ in range(100):
        inst = random_instance(rng, cfg)
        for flavor, agg in ALL_RULES:
            try:
                got = solve_plain(flavor, agg, inst)
            except Infeasible:
                continue
            assert is_feasible(inst, got)
            assert is_exhaustive(inst, got)
