"""Acceptance gate: every criterion runs at its stated tolerance and prints
one PASS/FAIL line (run with ``pytest tests/test_acceptance.py -v -s``)."""

from __future__ import annotations

import random
from contextlib import contextmanager
from time import perf_counter

import numpy as np
import pytest

from pbdonations import (
    Aggregator,
    AxiomId,
    Bundle,
    FuzzConfig,
    Infeasible,
    RuleSpec,
    UtilityFlavor,
    Variant,
    check_improving,
    check_no_harm,
    check_voter_mono,
    check_welfare_mono,
    cowinners,
    dp_is_cowinner,
    dp_max_scores,
    find_improving_donation,
    fuzz,
    is_exhaustive,
    is_feasible,
    replay_violation,
    score,
    solve_pareto,
    solve_plain,
    solve_sequential,
    utility,
    winner,
    zero_donations,
)
from pbdonations.axioms import random_instance
from pbdonations.solve import _score_vector, _tables
from conftest import ALL_RULES

ADD = UtilityFlavor.ADDITIVE
MAX = UtilityFlavor.MAXIMUM
SUM = Aggregator.SUM
MIN = Aggregator.MIN


@contextmanager
def criterion(num: int, description: str, budget_seconds: float):
    start = perf_counter()
    try:
        yield
    except Exception:
        print(f"CRITERION {num}: FAIL - {description}")
        raise
    elapsed = perf_counter() - start
    if elapsed >= budget_seconds:
        print(f"CRITERION {num}: FAIL - {description} (took {elapsed:.2f}s, budget {budget_seconds}s)")
        pytest.fail(f"criterion {num} exceeded its time budget: {elapsed:.2f}s")
    print(f"CRITERION {num}: PASS - {description} ({elapsed:.2f}s)")


def test_criterion_1_example1_regression(example1):
    with criterion(1, "example1: plain/sequential/pareto winners", 1.0):
        plain = solve_plain(ADD, SUM, example1)
        assert plain == Bundle.of([0, 1])
        assert score(ADD, SUM, example1, plain) == 19
        assert solve_sequential(ADD, SUM, example1)[0] == Bundle.of([0, 2, 4])
        assert solve_pareto(ADD, SUM, example1) == Bundle.of([0, 3])


def test_criterion_2_single_donation_regression(theorem1, theorem1_donated):
    with criterion(2, "single donation flips the winner and harms a voter", 1.0):
        for flavor, agg in ALL_RULES:
            assert solve_plain(flavor, agg, theorem1) == Bundle.of([0, 2])
        for flavor, agg in [(ADD, SUM), (ADD, MIN), (MAX, MIN)]:
            assert solve_plain(flavor, agg, theorem1_donated) == Bundle.of([0, 1])
        # voter 2 (index 1) strictly loses under both utility flavors
        assert utility(ADD, theorem1_donated, 1, Bundle.of([0, 1])) == 6 < 7 == utility(
            ADD, theorem1_donated, 1, Bundle.of([0, 2])
        )
        assert utility(MAX, theorem1_donated, 1, Bundle.of([0, 1])) == 4 < 5 == utility(
            MAX, theorem1_donated, 1, Bundle.of([0, 2])
        )
        tied = cowinners(MAX, SUM, theorem1_donated)
        assert tied == frozenset({Bundle.of([0, 1]), Bundle.of([0, 2])})
        for bundle in tied:
            assert score(MAX, SUM, theorem1_donated, bundle) == 14


def test_criterion_3_sequential_welfare_drop(welfare_mono_instance):
    with criterion(3, "raised donation lowers sequential welfare", 1.0):
        cases = [
            (RuleSpec(ADD, SUM, Variant.SEQUENTIAL), 13, 11),
            (RuleSpec(ADD, MIN, Variant.SEQUENTIAL), 4, 3),
        ]
        for rule, before, after in cases:
            violation = check_welfare_mono(rule, welfare_mono_instance, 0, 0, 1)
            assert violation is not None
            assert (violation.value_before, violation.value_after) == (before, after)


def test_criterion_4_dp_equals_enumeration():
    with criterion(4, "dp and enumeration agree on 500 random instances", 60.0):
        rng = random.Random(2024)
        cfg = FuzzConfig(
            seed=2024, trials=0, max_projects=12, max_voters=5, max_types=2,
            max_cost=10, max_sat=9, max_donation=4, max_budget=30,
        )
        mismatches = 0
        cowinner_checks = 0
        for _ in range(500):
            inst = random_instance(rng, cfg)
            best_dp = dp_max_scores(inst).best_within(inst.lower, inst.upper)
            try:
                enum_winner = solve_plain(ADD, SUM, inst)
            except Infeasible:
                if best_dp is not None:
                    mismatches += 1
                continue
            if best_dp != score(ADD, SUM, inst, enum_winner):
                mismatches += 1
            # compare the winner checks on a few feasible bundles
            tab = _tables(inst)
            feasible_masks = np.nonzero(tab.feasible)[0]
            picks = [int(feasible_masks[rng.randrange(len(feasible_masks))]) for _ in range(3)]
            picks.append(enum_winner.mask())
            scores = _score_vector(tab, ADD, SUM)
            top = int(scores[feasible_masks].max())
            for mask in picks:
                bundle = Bundle.from_mask(mask)
                enum_answer = int(scores[mask]) >= top
                if dp_is_cowinner(inst, bundle) != enum_answer:
                    mismatches += 1
                cowinner_checks += 1
        assert mismatches == 0
        assert cowinner_checks >= 1500


OK_CELLS = (
    [(AxiomId.PROJECT_MONO, variant) for variant in Variant]
    + [(AxiomId.NO_HARM, Variant.SEQUENTIAL), (AxiomId.NO_HARM, Variant.PARETO)]
    + [(AxiomId.WELFARE_MONO, Variant.PLAIN), (AxiomId.WELFARE_MONO, Variant.PARETO)]
)


def test_criterion_5_desiderata_matrix(theorem1_donated, welfare_mono_instance, theorem8_family):
    with criterion(5, "satisfied/failed desiderata matrix reproduced", 600.0):
        # clean cells: zero violations across seeded property suites
        seed = 0
        for axiom, variant in OK_CELLS:
            for flavor, agg in ALL_RULES:
                seed += 1
                cfg = FuzzConfig(seed=seed, trials=1000, max_projects=6, max_voters=4)
                report = fuzz(axiom, RuleSpec(flavor, agg, variant), cfg)
                assert not report.violations, (axiom, variant, flavor, agg)
        # failing cells, via shipped fixtures: donations harm a voter under
        # every plain rule
        for flavor, agg in ALL_RULES:
            violation = check_no_harm(RuleSpec(flavor, agg, Variant.PLAIN), theorem1_donated)
            assert violation is not None and replay_violation(violation)
        # the fuzzer also finds such violations on its own within 10^4 trials
        for flavor, agg in ALL_RULES:
            report = fuzz(
                AxiomId.NO_HARM,
                RuleSpec(flavor, agg, Variant.PLAIN),
                FuzzConfig(seed=7, trials=10_000),
                stop_at_first=True,
            )
            assert report.violations and replay_violation(report.violations[0])
            assert report.shrunk is not None and replay_violation(report.shrunk)
        # raised donations can lower sequential welfare
        for flavor, agg in ALL_RULES:
            rule = RuleSpec(flavor, agg, Variant.SEQUENTIAL)
            violation = check_welfare_mono(rule, welfare_mono_instance, 0, 0, 1)
            assert violation is not None and replay_violation(violation)
            report = fuzz(
                AxiomId.WELFARE_MONO, rule,
                FuzzConfig(seed=1, trials=10_000, max_projects=6, max_voters=4),
                stop_at_first=True,
            )
            assert report.violations and replay_violation(report.violations[0])
        # withdrawing a donation can pay off under every rule and variant
        for variant in Variant:
            for flavor, agg in ALL_RULES:
                rule = RuleSpec(flavor, agg, variant)
                found = [
                    v
                    for x in (0, 1)
                    for j in (1, 2)
                    if (v := check_voter_mono(rule, theorem8_family, x, j)) is not None
                ]
                assert found, rule
                assert all(replay_violation(v) for v in found)
                report = fuzz(
                    AxiomId.VOTER_MONO, rule,
                    FuzzConfig(seed=2, trials=10_000),
                    stop_at_first=True,
                )
                assert report.violations and replay_violation(report.violations[0])


def test_criterion_6_min_defeat_transfer():
    with criterion(6, "singleton defeats transfer from max to additive flavor", 60.0):
        rng = random.Random(99)
        cfg = FuzzConfig(seed=99, trials=0, max_projects=6, max_voters=4)
        counterexamples = 0
        for _ in range(1000):
            inst = random_instance(rng, cfg)
            m = inst.num_projects
            x = Bundle.of([j for j in range(m) if rng.random() < 0.5])
            y = Bundle.of([rng.randrange(m)])
            if score(MAX, MIN, inst, x) > score(MAX, MIN, inst, y):
                if not score(ADD, MIN, inst, x) > score(ADD, MIN, inst, y):
                    counterexamples += 1
        assert counterexamples == 0


def test_criterion_7_structural_invariants():
    with criterion(7, "feasible/exhaustive outputs, variant collapse, search soundness", 120.0):
        rng = random.Random(123)
        cfg = FuzzConfig(seed=123, trials=0, max_projects=6, max_voters=4, max_types=2)
        for _ in range(150):
            inst = random_instance(rng, cfg)
            stripped = zero_donations(inst)
            for flavor, agg in ALL_RULES:
                try:
                    plain = solve_plain(flavor, agg, inst)
                except Infeasible:
                    continue
                assert is_feasible(inst, plain) and is_exhaustive(inst, plain)
                try:
                    # raises when the donation-free first round is infeasible
                    sequential, _ = solve_sequential(flavor, agg, inst)
                except Infeasible:
                    pass
                else:
                    assert is_feasible(inst, sequential) and is_exhaustive(inst, sequential)
                try:
                    pareto = solve_pareto(flavor, agg, inst)
                except Infeasible:
                    pass
                else:
                    assert is_feasible(inst, pareto)
                try:
                    plain0 = solve_plain(flavor, agg, stripped)
                except Infeasible:
                    continue
                assert solve_sequential(flavor, agg, stripped)[0] == plain0
                assert solve_pareto(flavor, agg, stripped) == plain0
        # donation-search witnesses always pass the improvement check
        rng = random.Random(321)
        small = FuzzConfig(seed=321, trials=0, max_projects=4, max_voters=3,
                           max_types=0, max_cost=4, max_donation=2, max_budget=6)
        rules = [RuleSpec(f, a, v) for f in UtilityFlavor for a in Aggregator for v in Variant]
        witnesses = 0
        for _ in range(120):
            inst = random_instance(rng, small)
            rule = rules[rng.randrange(len(rules))]
            voter = rng.randrange(inst.num_voters)
            try:
                result = find_improving_donation(rule, inst, voter, rng.randint(0, 3))
            except Infeasible:
                continue
            if result.improving:
                confirm = check_improving(rule, inst, voter, result.witness)
                assert confirm.improving and confirm.new_utility == result.new_utility
                witnesses += 1
        assert witnesses > 5
        # pruned search is complete: identical answers to the uncapped search
        rng = random.Random(555)
        tiny = FuzzConfig(seed=555, trials=0, max_projects=3, max_voters=3,
                          max_types=1, max_cost=4, max_sat=4, max_donation=2, max_budget=5)
        compared = 0
        for _ in range(60):
            inst = random_instance(rng, tiny)
            rule = rules[rng.randrange(len(rules))]
            voter = rng.randrange(inst.num_voters)
            delta = rng.randint(0, 3)
            try:
                pruned = find_improving_donation(rule, inst, voter, delta, prune=True)
            except Infeasible:
                continue
            assert pruned == find_improving_donation(rule, inst, voter, delta, prune=False)
            compared += 1
        assert compared > 40


def test_criterion_8_complexity_results_not_empirical():
    with criterion(8, "asymptotic hardness honored by exact solvers", 60.0):
        # The hardness classifications are asymptotic statements with no
        # finite empirical test; they are honored by exact exponential
        # solvers whose correctness criteria 4-7 establish.  One worst-case
        # shaped probe: the winner check stays exact on an instance whose
        # search space is the full power set.
        inst = random_instance(random.Random(8), FuzzConfig(seed=8, trials=0, max_projects=10))
        try:
            best = solve_plain(ADD, SUM, inst)
            assert dp_is_cowinner(inst, best)
        except Infeasible:
            pass
        print("note: coNP/P||NP/Sigma2P classifications are asymptotic; "
              "covered by exact search plus criteria 4-7")
