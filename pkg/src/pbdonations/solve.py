"""Exact winner determination for the four plain aggregation rules.

The semantic reference is exhaustive evaluation of all subsets (it owns the
deterministic tie-break order); the budget/type dynamic program accelerates
winner checking for the additive-sum rule and is cross-checked against the
enumeration in the test suite.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .model import Bundle, Infeasible, Instance, ResourceLimit, is_feasible, reduced_cost
from .scoring import Aggregator, UtilityFlavor, score

# Size caps: both structures are exponential, so refuse absurd allocations.
ENUMERATION_CELL_CAP = 100_000_000
DP_CELL_CAP = 100_000_000


class Variant(Enum):
    PLAIN = "plain"
    SEQUENTIAL = "sequential"
    PARETO = "pareto"


@dataclass(frozen=True)
class RuleSpec:
    """A complete rule choice: utility flavor, aggregator, donation handling."""

    flavor: UtilityFlavor
    agg: Aggregator
    variant: Variant = Variant.PLAIN


@dataclass(frozen=True, eq=False)
class _Tables:
    cost: np.ndarray      # (2^m,) reduced-cost sums
    tcnt: np.ndarray      # (2^m, t) type counts
    addu: np.ndarray      # (2^m, n) additive utilities
    maxu: np.ndarray      # (2^m, n) maximum utilities
    feasible: np.ndarray  # (2^m,) bool
    sizes: np.ndarray     # (2^m,) popcounts


@functools.lru_cache(maxsize=128)
def _tables(instance: Instance) -> _Tables:
    m = instance.num_projects
    n = instance.num_voters
    t = instance.num_types
    cells = (1 << m) * (2 * n + t + 2)
    if cells > ENUMERATION_CELL_CAP:
        raise ResourceLimit(
            f"subset enumeration needs {cells} cells (cap {ENUMERATION_CELL_CAP})"
        )
    costs = np.array([reduced_cost(instance, j) for j in range(m)], dtype=np.int64)
    types = np.array([p.types for p in instance.projects], dtype=np.int64).reshape(m, t)
    sats = np.array([v.sat for v in instance.voters], dtype=np.int64)
    cost, tcnt, addu, maxu = kernels.subset_tables(costs, types, sats)
    feas = cost <= instance.budget
    if t:
        lower = np.array(instance.lower, dtype=np.int64)
        upper = np.array(instance.upper, dtype=np.int64)
        feas &= np.all((tcnt >= lower) & (tcnt <= upper), axis=1)
    sizes = np.bitwise_count(np.arange(1 << m, dtype=np.uint64)).astype(np.int64)
    return _Tables(cost, tcnt, addu, maxu, feas, sizes)


def _utility_table(tab: _Tables, flavor: UtilityFlavor) -> np.ndarray:
    return tab.addu if flavor is UtilityFlavor.ADDITIVE else tab.maxu


def _score_vector(tab: _Tables, flavor: UtilityFlavor, agg: Aggregator) -> np.ndarray:
    u = _utility_table(tab, flavor)
    return u.sum(axis=1) if agg is Aggregator.SUM else u.min(axis=1)


def _pick_minimal(tab: _Tables, masks: np.ndarray) -> Bundle:
    """Tie-break among equal-score subsets: larger first, then lexicographically
    smallest sorted index sequence."""
    sz = tab.sizes[masks]
    masks = masks[sz == sz.max()]
    members = min(Bundle.from_mask(int(s)).members for s in masks)
    return Bundle(members)


def tie_break_less(
    instance: Instance, flavor: UtilityFlavor, agg: Aggregator, a: Bundle, b: Bundle
) -> bool:
    """Strict total order on bundles: higher score, then larger cardinality,
    then lexicographically smaller sorted index sequence."""
    sa = score(flavor, agg, instance, a)
    sb = score(flavor, agg, instance, b)
    if sa != sb:
        return sa > sb
    if len(a) != len(b):
        return len(a) > len(b)
    return a.members < b.members


def _argmax_masks(instance: Instance, flavor: UtilityFlavor, agg: Aggregator) -> np.ndarray:
    tab = _tables(instance)
    if not tab.feasible.any():
        raise Infeasible("no bundle satisfies the budget and diversity constraints")
    scores = _score_vector(tab, flavor, agg)
    masked = np.where(tab.feasible, scores, np.int64(-1))
    return np.nonzero(masked == masked.max())[0]


def solve_plain(flavor: UtilityFlavor, agg: Aggregator, instance: Instance) -> Bundle:
    """The tie-break-minimal maximum-score feasible bundle.

    Because both utility flavors are monotone, the cardinality tie-break
    guarantees the returned winner is exhaustive.
    """
    masks = _argmax_masks(instance, flavor, agg)
    return _pick_minimal(_tables(instance), masks)


def cowinners(flavor: UtilityFlavor, agg: Aggregator, instance: Instance) -> frozenset[Bundle]:
    """All feasible bundles attaining the maximum score."""
    masks = _argmax_masks(instance, flavor, agg)
    return frozenset(Bundle.from_mask(int(s)) for s in masks)


def _enumeration_best(instance: Instance, flavor: UtilityFlavor, agg: Aggregator) -> int:
    tab = _tables(instance)
    if not tab.feasible.any():
        raise Infeasible("no bundle satisfies the budget and diversity constraints")
    scores = _score_vector(tab, flavor, agg)
    return int(scores[tab.feasible].max())


def is_cowinner(
    flavor: UtilityFlavor, agg: Aggregator, instance: Instance, bundle: Bundle
) -> bool:
    """True iff ``bundle`` is feasible and no feasible bundle scores higher.

    For the additive-sum rule this routes through the dynamic program when
    its table fits the cap; enumeration and the DP always agree.
    """
    if not is_feasible(instance, bundle):
        return False
    s = score(flavor, agg, instance, bundle)
    if flavor is UtilityFlavor.ADDITIVE and agg is Aggregator.SUM:
        try:
            best = dp_max_scores(instance).best_within(instance.lower, instance.upper)
            return best is not None and s >= best
        except ResourceLimit:
            pass
    return s >= _enumeration_best(instance, flavor, agg)


@dataclass(frozen=True, eq=False)
class DpTable:
    """Filled dynamic-programming table for the additive-sum rule.

    ``entries[j, b, tau]`` holds the best additive-sum score over subsets of
    the first ``j`` projects with total reduced cost at most ``b`` and type
    counts given by the base-``base`` digits of ``tau``; -1 marks unreachable
    configurations.
    """

    budget: int
    num_types: int
    num_projects: int
    base: int
    entries: np.ndarray

    def entry(self, budget_used: int, counts: tuple[int, ...], prefix: int) -> int | None:
        if len(counts) != self.num_types:
            raise ValueError(f"expected {self.num_types} type counts")
        tau = 0
        for z in reversed(range(self.num_types)):
            if not 0 <= counts[z] < self.base:
                return None
            tau = tau * self.base + counts[z]
        value = int(self.entries[prefix, budget_used, tau])
        return None if value < 0 else value

    def best_within(self, lower, upper) -> int | None:
        """Best final-layer score among configurations with
        ``lower <= counts <= upper``; None when none is reachable."""
        final = self.entries[self.num_projects, self.budget]
        t = self.num_types
        if t:
            radix = self.base ** np.arange(t, dtype=np.int64)
            digits = (np.arange(final.shape[0], dtype=np.int64)[:, None] // radix) % self.base
            lo = np.array(lower, dtype=np.int64)
            hi = np.array(upper, dtype=np.int64)
            ok = np.all((digits >= lo) & (digits <= hi), axis=1)
            final = final[ok]
        best = int(final.max()) if final.size else -1
        return None if best < 0 else best


def dp_max_scores(instance: Instance, cell_cap: int = DP_CELL_CAP) -> DpTable:
    """Fill the pseudo-polynomial table for the additive-sum rule.

    Table size is ``(B+1) * (m+1)^(t+1)`` cells; exceeding ``cell_cap``
    raises :class:`ResourceLimit` before allocation.
    """
    m = instance.num_projects
    t = instance.num_types
    base = m + 1
    cells = (instance.budget + 1) * base ** (t + 1)
    if cells > cell_cap:
        raise ResourceLimit(f"dp table needs {cells} cells (cap {cell_cap})")
    costs = np.array([reduced_cost(instance, j) for j in range(m)], dtype=np.int64)
    gains = np.array(
        [sum(v.sat[j] for v in instance.voters) for j in range(m)], dtype=np.int64
    )
    types = np.array([p.types for p in instance.projects], dtype=np.int64).reshape(m, t)
    entries = kernels.dp_fill(costs, gains, types, instance.budget, base)
    return DpTable(instance.budget, t, m, base, entries)


def dp_is_cowinner(instance: Instance, bundle: Bundle) -> bool:
    """Winner check for the additive-sum rule via the DP table.

    Requires a feasible bundle; agrees with
    ``is_cowinner(ADDITIVE, SUM, ...)`` on all feasible bundles.
    """
    if not is_feasible(instance, bundle):
        raise ValueError("dp_is_cowinner requires a feasible bundle")
    s = score(UtilityFlavor.ADDITIVE, Aggregator.SUM, instance, bundle)
    best = dp_max_scores(instance).best_within(instance.lower, instance.upper)
    return best is not None and s >= best
