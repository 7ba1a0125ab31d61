"""Immutable participatory-budgeting instances with voter donations.

An instance holds projects (cost plus a per-type membership bit vector),
voters (a satisfaction vector and a donation vector over projects), a public
budget, and per-type lower/upper bounds on how many projects of each type may
be funded.  All quantities are exact non-negative integers.  Instances are
value types: the surgery helpers (:func:`zero_donations`,
:func:`replace_donation`) return new instances and never mutate.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence


class PBError(Exception):
    """Base class for errors raised by this package."""


class Infeasible(PBError):
    """No bundle satisfies the budget and diversity constraints."""


class ResourceLimit(PBError):
    """A table or search space exceeded its configured size cap."""


class NotApplicable(PBError):
    """A check's precondition does not hold for the given input."""


@dataclass(frozen=True)
class Project:
    """A fundable project: integer cost and a type-membership bit vector."""

    id: int
    name: str
    cost: int
    types: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.cost < 0:
            raise ValueError(f"project {self.name!r}: cost must be >= 0")
        if any(bit not in (0, 1) for bit in self.types):
            raise ValueError(f"project {self.name!r}: type entries must be 0 or 1")


@dataclass(frozen=True)
class Voter:
    """A voter: per-project satisfaction values and pledged donations."""

    id: int
    name: str
    sat: tuple[int, ...]
    donation: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.sat) != len(self.donation):
            raise ValueError(
                f"voter {self.name!r}: sat and donation lengths differ "
                f"({len(self.sat)} vs {len(self.donation)})"
            )
        if any(v < 0 for v in self.sat):
            raise ValueError(f"voter {self.name!r}: satisfaction values must be >= 0")
        if any(v < 0 for v in self.donation):
            raise ValueError(f"voter {self.name!r}: donations must be >= 0")


@dataclass(frozen=True)
class Instance:
    """A complete participatory-budgeting instance.

    Invariants enforced at construction: at least one project and one voter,
    every type vector has ``num_types`` entries, every voter vector has one
    entry per project, bounds satisfy ``0 <= lower[z] <= upper[z]``, and the
    budget is non-negative.  An instance with no feasible bundle (unreachable
    lower bounds) is constructible; solvers report that as
    :class:`Infeasible`.
    """

    num_types: int
    projects: tuple[Project, ...]
    voters: tuple[Voter, ...]
    budget: int
    lower: tuple[int, ...]
    upper: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.num_types < 0:
            raise ValueError("num_types must be >= 0")
        if not self.projects:
            raise ValueError("an instance needs at least one project")
        if not self.voters:
            raise ValueError("an instance needs at least one voter")
        if self.budget < 0:
            raise ValueError("budget must be >= 0")
        m, t = len(self.projects), self.num_types
        for p in self.projects:
            if len(p.types) != t:
                raise ValueError(f"project {p.name!r}: type vector must have {t} entries")
        for v in self.voters:
            if len(v.sat) != m:
                raise ValueError(f"voter {v.name!r}: vectors must have {m} entries")
        if len(self.lower) != t or len(self.upper) != t:
            raise ValueError(f"lower/upper must have {t} entries")
        for z in range(t):
            if self.lower[z] < 0:
                raise ValueError(f"lower[{z}] must be >= 0")
            if self.lower[z] > self.upper[z]:
                raise ValueError(f"lower[{z}] > upper[{z}] ({self.lower[z]} > {self.upper[z]})")

    @property
    def num_projects(self) -> int:
        return len(self.projects)

    @property
    def num_voters(self) -> int:
        return len(self.voters)

    def project_index(self, name: str) -> int:
        for p in self.projects:
            if p.name == name:
                return p.id
        raise KeyError(f"no project named {name!r}")

    def voter_index(self, name: str) -> int:
        for v in self.voters:
            if v.name == name:
                return v.id
        raise KeyError(f"no voter named {name!r}")


@dataclass(frozen=True)
class Bundle:
    """A set of project indices, stored strictly increasing."""

    members: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for a, b in zip(self.members, self.members[1:]):
            if a >= b:
                raise ValueError("bundle members must be strictly increasing")
        if self.members and self.members[0] < 0:
            raise ValueError("bundle members must be >= 0")

    @classmethod
    def of(cls, indices: Iterable[int]) -> "Bundle":
        """Build a bundle from indices in any order; duplicates are rejected."""
        ordered = tuple(sorted(indices))
        return cls(ordered)

    @classmethod
    def from_mask(cls, mask: int) -> "Bundle":
        members = []
        j = 0
        while mask:
            if mask & 1:
                members.append(j)
            mask >>= 1
            j += 1
        return cls(tuple(members))

    def mask(self) -> int:
        out = 0
        for j in self.members:
            out |= 1 << j
        return out

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, j: int) -> bool:
        return j in self.members


def build_instance(
    costs: Sequence[int],
    sats: Sequence[Sequence[int]],
    donations: Sequence[Sequence[int]] | None = None,
    budget: int = 0,
    types: Sequence[Sequence[int]] | None = None,
    lower: Sequence[int] | None = None,
    upper: Sequence[int] | None = None,
    num_types: int | None = None,
    project_names: Sequence[str] | None = None,
    voter_names: Sequence[str] | None = None,
) -> Instance:
    """Convenience constructor from plain sequences.

    ``types`` gives, per project, the list of type indices it belongs to.
    Project and voter names default to ``p1..pm`` and ``v1..vn``.
    """
    m = len(costs)
    n = len(sats)
    if types is None:
        types = [[] for _ in range(m)]
    if num_types is None:
        if lower is not None:
            num_types = len(lower)
        else:
            num_types = max((idx + 1 for row in types for idx in row), default=0)
    t = num_types
    if lower is None:
        lower = [0] * t
    if upper is None:
        upper = [m] * t
    if donations is None:
        donations = [[0] * m for _ in range(n)]
    if project_names is None:
        project_names = [f"p{j + 1}" for j in range(m)]
    if voter_names is None:
        voter_names = [f"v{i + 1}" for i in range(n)]
    projects = []
    for j in range(m):
        bits = [0] * t
        for idx in types[j]:
            if not 0 <= idx < t:
                raise ValueError(f"project {project_names[j]!r}: type index {idx} out of range")
            bits[idx] = 1
        projects.append(Project(j, project_names[j], int(costs[j]), tuple(bits)))
    voters = [
        Voter(i, voter_names[i], tuple(int(x) for x in sats[i]), tuple(int(x) for x in donations[i]))
        for i in range(n)
    ]
    return Instance(t, tuple(projects), tuple(voters), int(budget), tuple(lower), tuple(upper))


def _check_bundle(instance: Instance, bundle: Bundle) -> None:
    if bundle.members and bundle.members[-1] >= instance.num_projects:
        raise ValueError(
            f"bundle index {bundle.members[-1]} out of range for {instance.num_projects} projects"
        )


def total_donation(instance: Instance, j: int) -> int:
    """Sum of all voters' pledged donations to project ``j``."""
    return sum(v.donation[j] for v in instance.voters)


def reduced_cost(instance: Instance, j: int) -> int:
    """Public money consumed by project ``j``: cost minus donations, floored at 0."""
    return max(0, instance.projects[j].cost - total_donation(instance, j))


def bundle_cost(instance: Instance, bundle: Bundle) -> int:
    """Total reduced cost of a bundle."""
    _check_bundle(instance, bundle)
    return sum(reduced_cost(instance, j) for j in bundle)


def type_counts(instance: Instance, bundle: Bundle) -> tuple[int, ...]:
    """Number of funded projects per type."""
    _check_bundle(instance, bundle)
    counts = [0] * instance.num_types
    for j in bundle:
        for z, bit in enumerate(instance.projects[j].types):
            counts[z] += bit
    return tuple(counts)


def is_feasible(instance: Instance, bundle: Bundle) -> bool:
    """True iff the bundle respects the budget and every type bound."""
    if bundle_cost(instance, bundle) > instance.budget:
        return False
    counts = type_counts(instance, bundle)
    return all(
        instance.lower[z] <= counts[z] <= instance.upper[z] for z in range(instance.num_types)
    )


def is_exhaustive(instance: Instance, bundle: Bundle) -> bool:
    """True iff no missing project can be added without breaking feasibility.

    Raises ``ValueError`` when the bundle itself is infeasible.
    """
    if not is_feasible(instance, bundle):
        raise ValueError("is_exhaustive requires a feasible bundle")
    present = set(bundle.members)
    for j in range(instance.num_projects):
        if j in present:
            continue
        if is_feasible(instance, Bundle.of(list(bundle.members) + [j])):
            return False
    return True


def zero_donations(instance: Instance) -> Instance:
    """Copy of the instance with every donation entry set to 0 (idempotent)."""
    m = instance.num_projects
    zeros = (0,) * m
    voters = tuple(replace(v, donation=zeros) for v in instance.voters)
    return replace(instance, voters=voters)


def replace_donation(instance: Instance, voter: int, donation: Sequence[int]) -> Instance:
    """New instance where ``voter``'s donation vector is replaced wholesale."""
    vec = tuple(int(x) for x in donation)
    if len(vec) != instance.num_projects:
        raise ValueError(
            f"donation vector has {len(vec)} entries, expected {instance.num_projects}"
        )
    voters = list(instance.voters)
    voters[voter] = replace(voters[voter], donation=vec)
    return replace(instance, voters=tuple(voters))


def is_j_variant(b: Sequence[int], b_prime: Sequence[int], j: int) -> bool:
    """True iff the two donation vectors agree on every project except ``j``."""
    if len(b) != len(b_prime):
        raise ValueError("donation vectors must have equal length")
    return all(b[k] == b_prime[k] for k in range(len(b)) if k != j)


def is_satisfaction_consistent(instance: Instance, voter: int) -> bool:
    """Check that a voter's donations follow her satisfaction ordering.

    Requires (i) no donation to a zero-satisfaction project and (ii) strictly
    larger donations to strictly preferred projects.
    """
    v = instance.voters[voter]
    m = instance.num_projects
    for j in range(m):
        if v.sat[j] == 0 and v.donation[j] != 0:
            return False
    for j in range(m):
        for k in range(m):
            if v.sat[j] > v.sat[k] and not v.donation[j] > v.donation[k]:
                return False
    return True
