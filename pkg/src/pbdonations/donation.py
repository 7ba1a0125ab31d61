"""Exact search for utility-improving donation reallocations.

A voter may replace her whole donation vector by any non-negative integer
vector summing to at most ``delta``.  The search enumerates that space in a
fixed order (smaller totals first, then lexicographic), so the reported
witness is the order-minimal improving vector.  Per-project amounts are
capped at what can still change a reduced cost; the cap provably loses no
outcomes and is itself property-tested against the uncapped search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .model import Instance, ResourceLimit, replace_donation
from .scoring import utility
from .solve import RuleSpec
from .variants import winner

NODE_CAP = 10_000_000


@dataclass(frozen=True)
class DonationQuery:
    """Search parameters: who reallocates, how much, under which rule."""

    voter: int
    delta: int
    rule: RuleSpec

    def __post_init__(self) -> None:
        if self.voter < 0:
            raise ValueError("voter index must be >= 0")
        if self.delta < 0:
            raise ValueError("delta must be >= 0")


@dataclass(frozen=True)
class DonationAnswer:
    """Outcome of an improvement check or search.

    When ``improving`` is true, ``witness`` is the replacement vector and
    ``new_utility > baseline_utility``.  When false after a search,
    ``new_utility`` is the best utility any candidate achieved.
    """

    improving: bool
    witness: tuple[int, ...] | None
    baseline_utility: int
    new_utility: int


def check_improving(
    rule: RuleSpec, instance: Instance, voter: int, vector: Sequence[int]
) -> DonationAnswer:
    """Does replacing ``voter``'s donations with ``vector`` raise her utility?

    Winners before and after are computed with the package's fixed tie-break
    and compared under the rule's own utility flavor.
    """
    vec = tuple(int(x) for x in vector)
    if any(x < 0 for x in vec):
        raise ValueError("donation entries must be >= 0")
    before = winner(rule, instance)
    baseline = utility(rule.flavor, instance, voter, before)
    after_instance = replace_donation(instance, voter, vec)
    after = winner(rule, after_instance)
    new = utility(rule.flavor, after_instance, voter, after)
    improving = new > baseline
    return DonationAnswer(improving, vec if improving else None, baseline, new)


def _vectors(caps: list[int], delta: int) -> Iterator[tuple[int, ...]]:
    """All capped vectors with sum <= delta, smaller totals first, lexicographic
    within a total."""

    def exact(pos: int, left: int, prefix: list[int]) -> Iterator[tuple[int, ...]]:
        if pos == len(caps) - 1:
            if left <= caps[pos]:
                yield tuple(prefix + [left])
            return
        tail_room = sum(caps[pos + 1 :])
        lo = max(0, left - tail_room)
        for v in range(lo, min(caps[pos], left) + 1):
            yield from exact(pos + 1, left - v, prefix + [v])

    for total in range(delta + 1):
        yield from exact(0, total, [])


def find_improving_donation(
    rule: RuleSpec,
    instance: Instance,
    voter: int,
    delta: int,
    prune: bool = True,
    node_cap: int = NODE_CAP,
) -> DonationAnswer:
    """Exhaustive search for an improving reallocation of at most ``delta``.

    With ``prune`` on, each project's amount is capped at
    ``min(delta, max(0, cost - donations from the other voters))``: anything
    above that cap leaves every reduced cost, hence every winner, unchanged,
    so the capped space is complete for the unbounded problem.  Candidates
    beyond ``node_cap`` raise :class:`ResourceLimit`.
    """
    if delta < 0:
        raise ValueError("delta must be >= 0")
    m = instance.num_projects
    before = winner(rule, instance)
    baseline = utility(rule.flavor, instance, voter, before)
    if prune:
        caps = []
        for j in range(m):
            others = sum(v.donation[j] for v in instance.voters if v.id != voter)
            caps.append(min(delta, max(0, instance.projects[j].cost - others)))
    else:
        caps = [delta] * m
    best_new = None
    nodes = 0
    for vec in _vectors(caps, delta):
        nodes += 1
        if nodes > node_cap:
            raise ResourceLimit(f"donation search exceeded {node_cap} candidates")
        candidate = replace_donation(instance, voter, vec)
        u = utility(rule.flavor, candidate, voter, winner(rule, candidate))
        if best_new is None or u > best_new:
            best_new = u
        if u > baseline:
            return DonationAnswer(True, vec, baseline, u)
    assert best_new is not None  # the all-zero vector is always a candidate
    return DonationAnswer(False, None, baseline, best_new)


def answer(query: DonationQuery, instance: Instance) -> DonationAnswer:
    """Run :func:`find_improving_donation` for a query object."""
    return find_improving_donation(query.rule, instance, query.voter, query.delta)
