"""Voter utilities over bundles and the four scoring functions.

A utility flavor lifts one voter's per-project satisfactions to a bundle
(additive sum or maximum); an aggregator combines the voters' utilities into
one score (utilitarian sum or egalitarian minimum).  Scores depend only on
the bundle and the satisfaction values, never on donations.
"""

from __future__ import annotations

from enum import Enum

from .model import Bundle, Instance, _check_bundle


class UtilityFlavor(Enum):
    ADDITIVE = "additive"
    MAXIMUM = "maximum"


class Aggregator(Enum):
    SUM = "sum"
    MIN = "min"


def utility(flavor: UtilityFlavor, instance: Instance, voter: int, bundle: Bundle) -> int:
    """One voter's utility for a bundle; 0 on the empty bundle."""
    _check_bundle(instance, bundle)
    sat = instance.voters[voter].sat
    values = [sat[j] for j in bundle]
    if not values:
        return 0
    if flavor is UtilityFlavor.ADDITIVE:
        return sum(values)
    return max(values)


def score(flavor: UtilityFlavor, agg: Aggregator, instance: Instance, bundle: Bundle) -> int:
    """Aggregate utility of all voters for a bundle."""
    utilities = [utility(flavor, instance, i, bundle) for i in range(instance.num_voters)]
    if agg is Aggregator.SUM:
        return sum(utilities)
    return min(utilities)


def dominates(flavor: UtilityFlavor, instance: Instance, a: Bundle, b: Bundle) -> bool:
    """True iff ``a`` is weakly better than ``b`` for everyone and strictly
    better for at least one voter, under the given utility flavor."""
    strict = False
    for i in range(instance.num_voters):
        ua = utility(flavor, instance, i, a)
        ub = utility(flavor, instance, i, b)
        if ua < ub:
            return False
        if ua > ub:
            strict = True
    return strict
