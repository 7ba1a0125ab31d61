from __future__ import annotations

import random

import pytest

import oracles
from pbdonations import (
    Aggregator,
    Bundle,
    ResourceLimit,
    UtilityFlavor,
    build_instance,
    dp_is_cowinner,
    dp_max_scores,
    is_cowinner,
)
from pbdonations.axioms import FuzzConfig, random_instance

ADD = UtilityFlavor.ADDITIVE
SUM = Aggregator.SUM


def _oracle_best(instance):
    candidates = oracles.all_feasible(instance)
    if not candidates:
        return None
    return max(oracles.score("add", "sum", instance, c) for c in candidates)


def test_knapsack_degeneracy_matches_bruteforce():
    # no types: the table is a plain knapsack value table
    rng = random.Random(5)
    for _ in range(40):
        m = rng.randint(1, 9)
        inst = build_instance(
            costs=[rng.randint(0, 7) for _ in range(m)],
            sats=[[rng.randint(0, 9) for _ in range(m)] for _ in range(rng.randint(1, 3))],
            budget=rng.randint(0, 20),
        )
        table = dp_max_scores(inst)
        assert table.best_within(inst.lower, inst.upper) == _oracle_best(inst)


def test_all_zero_costs_take_everything():
    inst = build_instance(
        costs=[0, 0, 0],
        sats=[[3, 1, 4]],
        budget=0,
        types=[[0], [], [0]],
        lower=[0],
        upper=[3],
    )
    table = dp_max_scores(inst)
    assert table.best_within(inst.lower, inst.upper) == 8
    # the full-take configuration holds the whole gain
    assert table.entry(0, (2,), 3) == 8


def test_example1_dp_best(example1):
    table = dp_max_scores(example1)
    assert table.best_within(example1.lower, example1.upper) == 19


def test_base_entry_and_budget_monotonicity(example1):
    table = dp_max_scores(example1)
    assert table.entry(0, (), 0) == 0
    m = example1.num_projects
    for prefix in range(m + 1):
        previous = -1
        for budget in range(example1.budget + 1):
            value = table.entries[prefix, budget, 0]
            assert value >= previous
            previous = value


def test_budget_monotonicity_with_types():
    inst = build_instance(
        costs=[2, 3, 1, 4],
        sats=[[3, 5, 1, 2], [1, 0, 4, 2]],
        donations=[[1, 0, 0, 0], [0, 0, 0, 2]],
        budget=6,
        types=[[0], [0, 1], [], [1]],
        lower=[0, 0],
        upper=[2, 2],
    )
    table = dp_max_scores(inst)
    assert table.entry(0, (0, 0), 0) == 0
    entries = table.entries
    for prefix in range(entries.shape[0]):
        for tau in range(entries.shape[2]):
            column = entries[prefix, :, tau]
            assert all(a <= b for a, b in zip(column, column[1:]))


def test_dp_cowinner_agrees_with_enumeration():
    rng = random.Random(17)
    cfg = FuzzConfig(seed=17, trials=0, max_projects=7, max_voters=4, max_types=2,
                     max_cost=7, max_budget=18)
    pairs = 0
    for _ in range(120):
        inst = random_instance(rng, cfg)
        feasible = oracles.all_feasible(inst)
        if not feasible:
            continue
        sample = [feasible[rng.randrange(len(feasible))] for _ in range(min(4, len(feasible)))]
        for members in sample:
            bundle = Bundle.of(members)
            assert dp_is_cowinner(inst, bundle) == is_cowinner(ADD, SUM, inst, bundle)
            pairs += 1
    assert pairs > 150


def test_dp_winner_and_below_optimum():
    inst = build_instance([2, 2], [[4, 1]], budget=4)
    assert dp_is_cowinner(inst, Bundle.of([0, 1]))
    assert not dp_is_cowinner(inst, Bundle.of([1]))


def test_dp_requires_feasible_bundle(theorem1):
    with pytest.raises(ValueError):
        dp_is_cowinner(theorem1, Bundle.of([0, 1]))


def test_dp_resource_cap():
    inst = build_instance([1, 1], [[1, 1]], budget=100)
    with pytest.raises(ResourceLimit):
        dp_max_scores(inst, cell_cap=10)
