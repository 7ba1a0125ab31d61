"""Desideratum checkers and a seeded counterexample fuzzer.

Four desiderata relate donations to outcomes: no-harm (donations never leave
a voter worse off than the donation-free process), project monotonicity
(raising a donation to a winning project keeps it winning), welfare
monotonicity (raising a donation never lowers the winner's score), and voter
monotonicity (withdrawing one's own donation to a project never pays off).
The checkers refute on supplied perturbations; the fuzzer supplies the
quantification with deterministic, replayable random instances and greedily
shrinks the first counterexample it finds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace as dc_replace
from enum import Enum

import numpy as np

from .model import (
    Bundle,
    Infeasible,
    Instance,
    NotApplicable,
    Project,
    Voter,
    build_instance,
    replace_donation,
    zero_donations,
)
from .scoring import score, utility
from .solve import RuleSpec, _tables
from .variants import winner


class AxiomId(Enum):
    NO_HARM = "no-harm"
    PROJECT_MONO = "project-mono"
    WELFARE_MONO = "welfare-mono"
    VOTER_MONO = "voter-mono"
    WEAK_CONTINUITY = "weak-continuity"


@dataclass(frozen=True)
class Perturbation:
    """A single donation edit: voter ``voter`` changes her pledge to
    ``project`` from ``old`` to ``new``."""

    voter: int
    project: int
    old: int
    new: int


@dataclass(frozen=True)
class Violation:
    """A replayable counterexample.

    ``value_before``/``value_after`` are the compared quantities: the harmed
    voter's utilities for no-harm and voter monotonicity, winner scores for
    the two monotonicity axioms on welfare and projects.
    """

    axiom: AxiomId
    rule: RuleSpec
    instance: Instance
    perturbation: Perturbation | None
    voter: int | None
    winner_before: Bundle
    winner_after: Bundle
    value_before: int
    value_after: int


def _perturbed(instance: Instance, pert: Perturbation) -> Instance:
    vec = list(instance.voters[pert.voter].donation)
    if vec[pert.project] != pert.old:
        raise ValueError("perturbation does not match the stored instance")
    vec[pert.project] = pert.new
    return replace_donation(instance, pert.voter, vec)


def check_no_harm(rule: RuleSpec, instance: Instance) -> Violation | None:
    """Compare every voter's utility under the rule with and without donations;
    return the first harmed voter, or None."""
    with_donations = winner(rule, instance)
    without = winner(rule, zero_donations(instance))
    for x in range(instance.num_voters):
        after = utility(rule.flavor, instance, x, with_donations)
        before = utility(rule.flavor, instance, x, without)
        if after < before:
            return Violation(
                AxiomId.NO_HARM, rule, instance, None, x, without, with_donations, before, after
            )
    return None


def check_project_mono(
    rule: RuleSpec, instance: Instance, voter: int, project: int, increment: int
) -> Violation | None:
    """Raise ``voter``'s donation to a winning ``project`` and verify the
    project stays in the winner.  Vacuous pass when it was not winning."""
    if increment < 1:
        raise ValueError("increment must be >= 1")
    before = winner(rule, instance)
    if project not in before:
        return None
    old = instance.voters[voter].donation[project]
    pert = Perturbation(voter, project, old, old + increment)
    bumped = _perturbed(instance, pert)
    after = winner(rule, bumped)
    if project in after:
        return None
    return Violation(
        AxiomId.PROJECT_MONO,
        rule,
        instance,
        pert,
        None,
        before,
        after,
        score(rule.flavor, rule.agg, instance, before),
        score(rule.flavor, rule.agg, instance, after),
    )


def check_welfare_mono(
    rule: RuleSpec, instance: Instance, voter: int, project: int, increment: int
) -> Violation | None:
    """Violation iff the winner's score strictly drops after the raise."""
    if increment < 1:
        raise ValueError("increment must be >= 1")
    before = winner(rule, instance)
    old = instance.voters[voter].donation[project]
    pert = Perturbation(voter, project, old, old + increment)
    bumped = _perturbed(instance, pert)
    after = winner(rule, bumped)
    s_before = score(rule.flavor, rule.agg, instance, before)
    s_after = score(rule.flavor, rule.agg, instance, after)
    if s_after >= s_before:
        return None
    return Violation(
        AxiomId.WELFARE_MONO, rule, instance, pert, None, before, after, s_before, s_after
    )


def check_voter_mono(
    rule: RuleSpec, instance: Instance, voter: int, project: int
) -> Violation | None:
    """Violation iff zeroing the voter's donation to ``project`` strictly
    raises her own utility.  Vacuous pass when she donates nothing there."""
    old = instance.voters[voter].donation[project]
    if old == 0:
        return None
    before = winner(rule, instance)
    pert = Perturbation(voter, project, old, 0)
    withdrawn = _perturbed(instance, pert)
    after = winner(rule, withdrawn)
    u_before = utility(rule.flavor, instance, voter, before)
    u_after = utility(rule.flavor, instance, voter, after)
    if u_after <= u_before:
        return None
    return Violation(
        AxiomId.VOTER_MONO, rule, instance, pert, voter, before, after, u_before, u_after
    )


def replay_violation(violation: Violation) -> bool:
    """Re-run the stored check and confirm it reproduces the violation exactly."""
    v = violation
    if v.axiom is AxiomId.NO_HARM:
        got = check_no_harm(v.rule, v.instance)
    elif v.axiom is AxiomId.PROJECT_MONO:
        assert v.perturbation is not None
        got = check_project_mono(
            v.rule,
            v.instance,
            v.perturbation.voter,
            v.perturbation.project,
            v.perturbation.new - v.perturbation.old,
        )
    elif v.axiom is AxiomId.WELFARE_MONO:
        assert v.perturbation is not None
        got = check_welfare_mono(
            v.rule,
            v.instance,
            v.perturbation.voter,
            v.perturbation.project,
            v.perturbation.new - v.perturbation.old,
        )
    elif v.axiom is AxiomId.VOTER_MONO:
        assert v.perturbation is not None
        got = check_voter_mono(v.rule, v.instance, v.perturbation.voter, v.perturbation.project)
    else:
        raise ValueError(f"{v.axiom} violations are not replayable")
    return got == v


def weak_continuity_witness(
    rule: RuleSpec,
    instance: Instance,
    project: int,
    k_max: int = 8,
    c_max: int = 64,
) -> tuple[int, int] | None:
    """Smallest (k, c), lexicographically, such that adding k non-donating
    voters satisfied only by ``project`` (with value c) puts it in the winner.

    Requires every existing voter to value the project positively and some
    feasible bundle to contain it; raises :class:`NotApplicable` otherwise.
    Returns None when no witness exists within the bounds.
    """
    if any(v.sat[project] == 0 for v in instance.voters):
        raise NotApplicable("every voter must have positive satisfaction for the project")
    feasible_masks = np.nonzero(_tables(instance).feasible)[0]
    if not np.any(feasible_masks & (1 << project)):
        raise NotApplicable("no feasible bundle contains the project")
    for k in range(1, k_max + 1):
        for c in range(1, c_max + 1):
            boosted = _with_boosters(instance, project, k, c)
            if project in winner(rule, boosted):
                return (k, c)
    return None


def _with_boosters(instance: Instance, project: int, k: int, c: int) -> Instance:
    m = instance.num_projects
    n = instance.num_voters
    sat = tuple(c if j == project else 0 for j in range(m))
    zeros = (0,) * m
    extra = tuple(Voter(n + i, f"booster{i + 1}", sat, zeros) for i in range(k))
    return dc_replace(instance, voters=instance.voters + extra)


@dataclass(frozen=True)
class FuzzConfig:
    """Deterministic generation bounds for random instances and perturbations."""

    seed: int = 0
    trials: int = 1000
    max_projects: int = 4
    max_voters: int = 3
    max_types: int = 2
    max_cost: int = 6
    max_sat: int = 6
    max_donation: int = 3
    max_budget: int = 10

    def __post_init__(self) -> None:
        if self.trials < 0:
            raise ValueError("trials must be >= 0")
        for field in ("max_projects", "max_voters", "max_cost", "max_sat", "max_donation", "max_budget"):
            if getattr(self, field) < 1:
                raise ValueError(f"{field} must be >= 1")
        if self.max_types < 0:
            raise ValueError("max_types must be >= 0")


@dataclass(frozen=True)
class FuzzReport:
    axiom: AxiomId
    rule: RuleSpec
    config: FuzzConfig
    trials_run: int
    violations: tuple[Violation, ...]
    shrunk: Violation | None


def random_instance(rng: random.Random, config: FuzzConfig) -> Instance:
    """One random instance within the config bounds (donations are common,
    lower bounds mostly zero so that most instances stay feasible)."""
    m = rng.randint(1, config.max_projects)
    n = rng.randint(1, config.max_voters)
    t = rng.randint(0, config.max_types)
    costs = [rng.randint(0, config.max_cost) for _ in range(m)]
    sats = [[rng.randint(0, config.max_sat) for _ in range(m)] for _ in range(n)]
    donations = [
        [rng.randint(0, config.max_donation) if rng.random() < 0.5 else 0 for _ in range(m)]
        for _ in range(n)
    ]
    types = [[z for z in range(t) if rng.random() < 0.5] for _ in range(m)]
    upper = [rng.randint(0, m) for _ in range(t)]
    lower = [rng.randint(0, upper[z]) if rng.random() < 0.3 else 0 for z in range(t)]
    budget = rng.randint(0, config.max_budget)
    return build_instance(
        costs, sats, donations, budget, types=types, lower=lower, upper=upper, num_types=t
    )


def _run_check(
    axiom: AxiomId, rule: RuleSpec, instance: Instance, rng: random.Random
) -> Violation | None:
    if axiom is AxiomId.NO_HARM:
        return check_no_harm(rule, instance)
    x = rng.randrange(instance.num_voters)
    j = rng.randrange(instance.num_projects)
    if axiom is AxiomId.PROJECT_MONO:
        return check_project_mono(rule, instance, x, j, rng.randint(1, 3))
    if axiom is AxiomId.WELFARE_MONO:
        return check_welfare_mono(rule, instance, x, j, rng.randint(1, 3))
    if axiom is AxiomId.VOTER_MONO:
        positive = [
            (i, k)
            for i, v in enumerate(instance.voters)
            for k in range(instance.num_projects)
            if v.donation[k] > 0
        ]
        if not positive:
            return None
        x, j = positive[rng.randrange(len(positive))]
        return check_voter_mono(rule, instance, x, j)
    raise ValueError(
        "weak continuity is checked by witness search, not fuzzed; "
        "use weak_continuity_witness"
    )


def fuzz(
    axiom: AxiomId,
    rule: RuleSpec,
    config: FuzzConfig,
    stop_at_first: bool = False,
) -> FuzzReport:
    """Seeded random search for violations of one axiom under one rule.

    Identical (axiom, rule, config) inputs produce identical reports.  Every
    reported violation replays; the first one is also greedily shrunk.
    """
    rng = random.Random(config.seed)
    violations: list[Violation] = []
    trials = 0
    for _ in range(config.trials):
        trials += 1
        instance = random_instance(rng, config)
        try:
            found = _run_check(axiom, rule, instance, rng)
        except Infeasible:
            continue
        if found is not None:
            violations.append(found)
            if stop_at_first:
                break
    shrunk = shrink_violation(violations[0]) if violations else None
    return FuzzReport(axiom, rule, config, trials, tuple(violations), shrunk)


def _recheck(violation: Violation, instance: Instance, pert: Perturbation | None) -> Violation | None:
    v = violation
    try:
        if v.axiom is AxiomId.NO_HARM:
            return check_no_harm(v.rule, instance)
        assert pert is not None
        if v.axiom is AxiomId.PROJECT_MONO:
            return check_project_mono(v.rule, instance, pert.voter, pert.project, pert.new - pert.old)
        if v.axiom is AxiomId.WELFARE_MONO:
            return check_welfare_mono(v.rule, instance, pert.voter, pert.project, pert.new - pert.old)
        return check_voter_mono(v.rule, instance, pert.voter, pert.project)
    except Infeasible:
        return None


def _drop_voter(instance: Instance, i: int) -> Instance:
    voters = tuple(
        Voter(new_id, v.name, v.sat, v.donation)
        for new_id, v in enumerate(v for k, v in enumerate(instance.voters) if k != i)
    )
    return dc_replace(instance, voters=voters)


def _drop_project(instance: Instance, j: int) -> Instance:
    keep = [k for k in range(instance.num_projects) if k != j]
    projects = tuple(
        Project(new_id, instance.projects[k].name, instance.projects[k].cost, instance.projects[k].types)
        for new_id, k in enumerate(keep)
    )
    voters = tuple(
        Voter(v.id, v.name, tuple(v.sat[k] for k in keep), tuple(v.donation[k] for k in keep))
        for v in instance.voters
    )
    return dc_replace(instance, projects=projects, voters=voters)


def _shift_pert(pert: Perturbation | None, dropped_project: int) -> Perturbation | None:
    if pert is None:
        return None
    j = pert.project
    return dc_replace(pert, project=j - 1 if j > dropped_project else j)


def shrink_violation(violation: Violation, max_rounds: int = 50) -> Violation:
    """Greedy best-effort minimization: drop projects and voters, then push
    numeric entries toward zero, keeping the violation alive throughout."""
    current = violation
    for _ in range(max_rounds):
        improved = False
        inst = current.instance
        pert = current.perturbation
        # Drop projects not referenced by the perturbation.
        for j in range(inst.num_projects):
            if inst.num_projects <= 1 or (pert is not None and pert.project == j):
                continue
            got = _recheck(current, _drop_project(inst, j), _shift_pert(pert, j))
            if got is not None:
                current, improved = got, True
                break
        if improved:
            continue
        # Drop voters not referenced by the perturbation or as the harmed party.
        for i in range(inst.num_voters):
            if inst.num_voters <= 1:
                continue
            if pert is not None and pert.voter == i:
                continue
            if current.voter is not None and current.voter == i:
                continue
            shifted_pert = pert
            if pert is not None and pert.voter > i:
                shifted_pert = dc_replace(pert, voter=pert.voter - 1)
            got = _recheck(current, _drop_voter(inst, i), shifted_pert)
            if got is not None:
                current, improved = got, True
                break
        if improved:
            continue
        # Shrink numeric entries: zero first, then halve.
        for candidate in _numeric_shrinks(inst, pert):
            got = _recheck(current, candidate, pert)
            if got is not None:
                current, improved = got, True
                break
        if not improved:
            break
    return current


def _numeric_shrinks(instance: Instance, pert: Perturbation | None):
    for j, p in enumerate(instance.projects):
        for target in (0, p.cost // 2):
            if target < p.cost:
                projects = list(instance.projects)
                projects[j] = Project(p.id, p.name, target, p.types)
                yield dc_replace(instance, projects=tuple(projects))
    for i, v in enumerate(instance.voters):
        for j in range(instance.num_projects):
            if v.sat[j] > 0:
                for target in (0, v.sat[j] // 2):
                    if target < v.sat[j]:
                        sat = list(v.sat)
                        sat[j] = target
                        voters = list(instance.voters)
                        voters[i] = Voter(v.id, v.name, tuple(sat), v.donation)
                        yield dc_replace(instance, voters=tuple(voters))
            protected = pert is not None and pert.voter == i and pert.project == j
            if v.donation[j] > 0 and not protected:
                don = list(v.donation)
                don[j] = 0
                voters = list(instance.voters)
                voters[i] = Voter(v.id, v.name, v.sat, tuple(don))
                yield dc_replace(instance, voters=tuple(voters))
    if instance.budget > 0:
        yield dc_replace(instance, budget=instance.budget // 2)
