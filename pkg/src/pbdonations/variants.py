"""Donation-aware selection schemes layered on the plain optimizer.

The sequential scheme repeatedly runs the plain rule on the donation-stripped
residual instance, banking the leftover budget that donations free up, and
finishes with one donation-aware pass so the result is exhaustive.  The
dominance scheme starts from the zero-donation winner and only moves to a
feasible bundle that makes every voter weakly better off and someone strictly
better off.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import (
    Bundle,
    Infeasible,
    Instance,
    Project,
    Voter,
    reduced_cost,
    zero_donations,
)
from .scoring import Aggregator, UtilityFlavor
from .solve import (
    RuleSpec,
    Variant,
    _pick_minimal,
    _score_vector,
    _tables,
    _utility_table,
    cowinners,
    solve_plain,
)


@dataclass(frozen=True)
class SequentialRound:
    """One loop iteration: what was picked and what remains afterwards."""

    picked: Bundle
    budget: int
    lower: tuple[int, ...]
    upper: tuple[int, ...]


@dataclass(frozen=True)
class SequentialTrace:
    rounds: tuple[SequentialRound, ...]
    final_addition: Bundle


def _subinstance(
    instance: Instance,
    keep: list[int],
    budget: int,
    lower: tuple[int, ...],
    upper: tuple[int, ...],
    strip_donations: bool,
) -> Instance:
    """Restriction to a project subset, renumbered to local indices."""
    projects = tuple(
        Project(local, instance.projects[j].name, instance.projects[j].cost, instance.projects[j].types)
        for local, j in enumerate(keep)
    )
    voters = tuple(
        Voter(
            v.id,
            v.name,
            tuple(v.sat[j] for j in keep),
            (0,) * len(keep) if strip_donations else tuple(v.donation[j] for j in keep),
        )
        for v in instance.voters
    )
    return Instance(instance.num_types, projects, voters, budget, lower, upper)


def solve_sequential(
    flavor: UtilityFlavor, agg: Aggregator, instance: Instance
) -> tuple[Bundle, SequentialTrace]:
    """Iterated plain rule with a donation-aware closing pass.

    Each round solves the donation-free residual instance, removes the picked
    projects, subtracts their type counts from the bounds (lower clamped at
    0) and their reduced costs from the budget.  The loop stops once a round
    picks nothing; one final donation-aware call tops the selection up to an
    exhaustive bundle.  Raises :class:`Infeasible` only when the very first
    round has no feasible bundle.
    """
    m = instance.num_projects
    t = instance.num_types
    remaining = list(range(m))
    budget = instance.budget
    lower = list(instance.lower)
    upper = list(instance.upper)
    selected: list[int] = []
    rounds: list[SequentialRound] = []
    round_no = 0
    while remaining:
        round_no += 1
        sub = _subinstance(instance, remaining, budget, tuple(lower), tuple(upper), True)
        try:
            local = solve_plain(flavor, agg, sub)
        except Infeasible:
            if round_no == 1:
                raise
            break
        if not local.members:
            break
        picked = [remaining[i] for i in local.members]
        selected.extend(picked)
        remaining = [j for j in remaining if j not in set(picked)]
        for j in picked:
            budget -= reduced_cost(instance, j)
            for z in range(t):
                lower[z] = max(0, lower[z] - instance.projects[j].types[z])
                upper[z] -= instance.projects[j].types[z]
        rounds.append(SequentialRound(Bundle.of(picked), budget, tuple(lower), tuple(upper)))
    extra: list[int] = []
    if remaining:
        sub = _subinstance(instance, remaining, budget, tuple(lower), tuple(upper), False)
        final_local = solve_plain(flavor, agg, sub)
        extra = [remaining[i] for i in final_local.members]
    return Bundle.of(selected + extra), SequentialTrace(tuple(rounds), Bundle.of(extra))


def _improvement_set_masks(
    flavor: UtilityFlavor, agg: Aggregator, instance: Instance
) -> tuple[list[int], np.ndarray, "np.ndarray"]:
    """Candidate masks for the dominance scheme: the zero-donation winner plus
    every feasible bundle that dominates it, with their scores."""
    base = solve_plain(flavor, agg, zero_donations(instance))
    tab = _tables(instance)
    util = _utility_table(tab, flavor)
    base_mask = base.mask()
    u0 = util[base_mask]
    dominating = tab.feasible & (util >= u0).all(axis=1) & (util > u0).any(axis=1)
    masks = [base_mask] + [int(s) for s in np.nonzero(dominating)[0]]
    scores = _score_vector(tab, flavor, agg)
    return masks, scores, tab


def solve_pareto(flavor: UtilityFlavor, agg: Aggregator, instance: Instance) -> Bundle:
    """Best-scoring bundle among the zero-donation winner and its dominators."""
    masks, scores, tab = _improvement_set_masks(flavor, agg, instance)
    arr = np.array(masks, dtype=np.int64)
    best = scores[arr].max()
    return _pick_minimal(tab, arr[scores[arr] == best])


def pareto_cowinners(
    flavor: UtilityFlavor, agg: Aggregator, instance: Instance
) -> frozenset[Bundle]:
    """All maximum-score elements of the dominance candidate set."""
    masks, scores, _ = _improvement_set_masks(flavor, agg, instance)
    arr = np.array(masks, dtype=np.int64)
    best = scores[arr].max()
    return frozenset(Bundle.from_mask(int(s)) for s in arr[scores[arr] == best])


def winner(rule: RuleSpec, instance: Instance) -> Bundle:
    """The winning bundle under a rule, honoring its variant."""
    if rule.variant is Variant.PLAIN:
        return solve_plain(rule.flavor, rule.agg, instance)
    if rule.variant is Variant.SEQUENTIAL:
        return solve_sequential(rule.flavor, rule.agg, instance)[0]
    return solve_pareto(rule.flavor, rule.agg, instance)


def variant_cowinners(rule: RuleSpec, instance: Instance) -> frozenset[Bundle]:
    """Co-winner set per variant.

    The sequential scheme is deterministic given the fixed tie-break, so its
    co-winner set is the singleton output.
    """
    if rule.variant is Variant.PLAIN:
        return cowinners(rule.flavor, rule.agg, instance)
    if rule.variant is Variant.PARETO:
        return pareto_cowinners(rule.flavor, rule.agg, instance)
    return frozenset({winner(rule, instance)})
