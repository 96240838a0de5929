"""Finite topologies as families of bitmasks.

A subset of the points ``{0, ..., n-1}`` is an int whose bit ``i`` is set iff
point ``i`` belongs to it.  The value types below wrap those ints for the
public API; the enumeration engine works on raw masks and only builds these
objects at its boundary.

Preorder convention: ``rel[x][y]`` means ``x <= y`` and holds iff ``x`` lies in
the minimal open set of ``y``.  Open sets are then exactly the down-sets and
the minimal open set of ``x`` is the down-closure of ``{x}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CoverError, DimensionMismatch, InvalidRelation, InvalidTopology

MAX_POINTS = 16


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_of(points: Iterable[int]) -> int:
    m = 0
    for x in points:
        m |= 1 << x
    return m


def points_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _check_n(n: int) -> None:
    if not 0 <= n <= MAX_POINTS:
        raise DimensionMismatch(f"point count must lie in 0..{MAX_POINTS}, got {n}")


@dataclass(frozen=True, order=True)
class Subset:
    """Subset of ``{0..n-1}`` stored as a characteristic bit vector."""

    bits: int
    n: int

    def __post_init__(self):
        _check_n(self.n)
        if self.bits < 0 or self.bits >> self.n:
            raise DimensionMismatch(f"bits {self.bits:#x} exceed {self.n} points")

    @classmethod
    def of(cls, n: int, points: Iterable[int]) -> Subset:
        pts = list(points)
        if any(not 0 <= x < n for x in pts):
            raise DimensionMismatch(f"points {pts} not all in 0..{n - 1}")
        return cls(mask_of(pts), n)

    @classmethod
    def empty(cls, n: int) -> Subset:
        return cls(0, n)

    @classmethod
    def full(cls, n: int) -> Subset:
        return cls(full_mask(n), n)

    def points(self) -> tuple[int, ...]:
        return points_of(self.bits)

    def issubset(self, other: Subset) -> bool:
        return self.bits & other.bits == self.bits

    def __contains__(self, x: int) -> bool:
        return bool(self.bits >> x & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __or__(self, other: Subset) -> Subset:
        return Subset(self.bits | other.bits, self.n)

    def __and__(self, other: Subset) -> Subset:
        return Subset(self.bits & other.bits, self.n)

    def __repr__(self):
        return "{" + ",".join(map(str, self.points())) + "}"


@dataclass(frozen=True)
class SetFamily:
    """Duplicate-free family of subsets, sorted by mask value.

    Construction canonicalizes the member order, so families built from the
    same sets in any order compare equal.
    """

    n: int
    members: tuple[Subset, ...]

    def __post_init__(self):
        _check_n(self.n)
        members = tuple(self.members)
        for s in members:
            if s.n != self.n:
                raise DimensionMismatch(f"member {s!r} lives on {s.n} points, family on {self.n}")
        object.__setattr__(self, "members", tuple(sorted(set(members))))

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> SetFamily:
        return cls(n, tuple(Subset(m, n) for m in masks))

    @classmethod
    def of(cls, n: int, sets: Iterable[Iterable[int]]) -> SetFamily:
        return cls(n, tuple(Subset.of(n, s) for s in sets))

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(s.bits for s in self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, s: Subset) -> bool:
        return s in self.members

    def __repr__(self):
        return f"SetFamily(n={self.n}, {list(self.members)})"


def _family_is_topology(n: int, masks: Sequence[int]) -> bool:
    opens = set(masks)
    if 0 not in opens or full_mask(n) not in opens:
        return False
    ms = sorted(opens)
    for i, a in enumerate(ms):
        for b in ms[i + 1:]:
            if a | b not in opens or a & b not in opens:
                return False
    return True


def is_topology(family: SetFamily) -> bool:
    """True iff the family holds the empty and full sets and is closed under
    pairwise union and intersection."""
    return _family_is_topology(family.n, family.masks)


@dataclass(frozen=True)
class Topology:
    family: SetFamily

    def __post_init__(self):
        if not is_topology(self.family):
            raise InvalidTopology(f"not a topology: {self.family!r}")

    @classmethod
    def trusted(cls, n: int, opens: Iterable[int]) -> Topology:
        """Build without the closure check; for masks produced by the engine."""
        t = object.__new__(cls)
        object.__setattr__(t, "family", SetFamily.from_masks(n, opens))
        return t

    @classmethod
    def of(cls, n: int, opens: Iterable[Iterable[int]]) -> Topology:
        return cls(SetFamily.of(n, opens))

    @classmethod
    def discrete(cls, n: int) -> Topology:
        return cls.trusted(n, range(1 << n))

    @classmethod
    def indiscrete(cls, n: int) -> Topology:
        return cls.trusted(n, {0, full_mask(n)})

    @property
    def n(self) -> int:
        return self.family.n

    @property
    def opens(self) -> tuple[int, ...]:
        return self.family.masks

    def __len__(self):
        return len(self.family)


@dataclass(frozen=True)
class Preorder:
    """Reflexive, transitive relation on ``{0..n-1}``; ``rel[x][y]`` reads ``x <= y``."""

    n: int
    rel: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        _check_n(self.n)
        rel = tuple(tuple(bool(v) for v in row) for row in self.rel)
        if len(rel) != self.n or any(len(row) != self.n for row in rel):
            raise InvalidRelation(f"relation is not {self.n}x{self.n}")
        object.__setattr__(self, "rel", rel)
        n = self.n
        for x in range(n):
            if not rel[x][x]:
                raise InvalidRelation(f"not reflexive at {x}")
        for x in range(n):
            for y in range(n):
                if rel[x][y]:
                    for z in range(n):
                        if rel[y][z] and not rel[x][z]:
                            raise InvalidRelation(f"not transitive: {x}<={y}<={z} but not {x}<={z}")

    @classmethod
    def trusted(cls, n: int, down: Sequence[int]) -> Preorder:
        """Build from down masks without validation; for engine output."""
        r = object.__new__(cls)
        object.__setattr__(r, "n", n)
        object.__setattr__(r, "rel", tuple(tuple(bool(down[y] >> x & 1) for y in range(n))
                                           for x in range(n)))
        return r

    @classmethod
    def from_down_masks(cls, n: int, down: Sequence[int]) -> Preorder:
        """``down[y]`` is the mask of all ``x <= y``."""
        return cls(n, tuple(tuple(bool(down[y] >> x & 1) for y in range(n)) for x in range(n)))

    @property
    def down_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(x for x in range(self.n) if self.rel[x][y]) for y in range(self.n))

    def leq(self, x: int, y: int) -> bool:
        return self.rel[x][y]

    def is_antisymmetric(self) -> bool:
        return all(not (self.rel[x][y] and self.rel[y][x])
                   for x in range(self.n) for y in range(x + 1, self.n))


@dataclass(frozen=True)
class MinimalBase:
    """Per-point minimal open sets and the family of their distinct values."""

    n: int
    assignment: tuple[Subset, ...]
    distinct: SetFamily

    def __post_init__(self):
        for x, o in enumerate(self.assignment):
            if x not in o:
                raise InvalidTopology(f"point {x} missing from its minimal open set {o!r}")
        if self.distinct != SetFamily(self.n, self.assignment):
            raise InvalidTopology("distinct does not match the assignment")

    @classmethod
    def from_masks(cls, n: int, masks: Sequence[int]) -> MinimalBase:
        assignment = tuple(Subset(m, n) for m in masks)
        return cls(n, assignment, SetFamily(n, assignment))

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(s.bits for s in self.assignment)


def union_closure(masks: Iterable[int]) -> set[int]:
    """All unions of subfamilies of ``masks`` (the empty union included)."""
    out = {0}
    for m in set(masks):
        out |= {o | m for o in out}
    return out


def intersection_closure(masks: Iterable[int], n: int) -> set[int]:
    out = {full_mask(n)}
    for m in set(masks):
        out |= {o & m for o in out}
    return out


def minimal_masks(n: int, opens: Iterable[int]) -> tuple[int, ...]:
    o = [full_mask(n)] * n
    for u in opens:
        for x in points_of(u):
            o[x] &= u
    return tuple(o)


def minimal_open_sets(t: Topology) -> MinimalBase:
    """O_x = intersection of every open set containing x, for each point x."""
    return MinimalBase.from_masks(t.n, minimal_masks(t.n, t.opens))


def generate_topology(base: SetFamily) -> Topology:
    """Smallest topology containing every member of ``base``.

    Members are first closed under finite intersection, then under unions, so
    a family that is not a base (only a subbase) still works.
    """
    n = base.n
    covered = 0
    for m in base.masks:
        covered |= m
    if covered != full_mask(n):
        missing = points_of(full_mask(n) & ~covered)
        raise CoverError(f"points {missing} are not covered by the base")
    return Topology.trusted(n, union_closure(intersection_closure(base.masks, n)))


def is_minimal_base(family: SetFamily) -> bool:
    return family == minimal_open_sets(generate_topology(family)).distinct


def to_preorder(t: Topology) -> Preorder:
    return Preorder.from_down_masks(t.n, minimal_masks(t.n, t.opens))


def from_preorder(r: Preorder) -> Topology:
    """Topology whose open sets are the down-sets of ``r``."""
    return Topology.trusted(r.n, union_closure(r.down_masks))


def is_t0(t: Topology) -> bool:
    o = minimal_masks(t.n, t.opens)
    return len(set(o)) == len(o)
