"""Permutation actions on points, topologies and minimal bases; fixed-point counts.

A permutation ``g`` moves a topology by moving each of its open sets
pointwise.  For a cyclic group it suffices to test the generator: whatever
the generator fixes, its powers fix too.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .core import MinimalBase, Preorder, Topology, from_preorder, is_t0, minimal_open_sets
from .enumeration import MAX_BACKTRACK, count_preorders, iter_down_masks, t0_table, t_table
from .errors import DimensionMismatch, TooLarge


@dataclass(frozen=True)
class Permutation:
    n: int
    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(self.image)
        object.__setattr__(self, "image", image)
        if len(image) != self.n or sorted(image) != list(range(self.n)):
            raise ValueError(f"{image} is not a permutation of 0..{self.n - 1}")

    @classmethod
    def of(cls, image: Sequence[int]) -> Permutation:
        return cls(len(image), tuple(image))

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(n, tuple(range(n)))

    @classmethod
    def swap(cls, n: int, i: int, j: int) -> Permutation:
        image = list(range(n))
        image[i], image[j] = j, i
        return cls(n, tuple(image))

    @classmethod
    def rotation(cls, n: int) -> Permutation:
        """x -> x + 1 mod n: the generator of the regular action of C_n on itself."""
        return cls(n, tuple((x + 1) % n for x in range(n)))

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __mul__(self, other: Permutation) -> Permutation:
        """``(g * h)(x) = g(h(x))``."""
        if other.n != self.n:
            raise DimensionMismatch(f"cannot compose permutations on {self.n} and {other.n} points")
        return Permutation(self.n, tuple(self.image[y] for y in other.image))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for x, y in enumerate(self.image):
            inv[y] = x
        return Permutation(self.n, tuple(inv))

    def order(self) -> int:
        g, k = self, 1
        ident = Permutation.identity(self.n)
        while g != ident:
            g, k = g * self, k + 1
        return k

    def apply_mask(self, mask: int) -> int:
        out = 0
        x = 0
        while mask:
            if mask & 1:
                out |= 1 << self.image[x]
            mask >>= 1
            x += 1
        return out


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class CyclicAction:
    """C_p cycling points ``0..p-1`` and fixing ``p..p+n_fixed-1``."""

    p: int
    n_fixed: int
    perm: Permutation = field(init=False, compare=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.n_fixed < 0:
            raise ValueError(f"n_fixed must be non-negative, got {self.n_fixed}")
        image = tuple((x + 1) % self.p for x in range(self.p)) + tuple(
            range(self.p, self.p + self.n_fixed))
        object.__setattr__(self, "perm", Permutation(self.n_points, image))

    @property
    def n_points(self) -> int:
        return self.p + self.n_fixed

    @property
    def cycled(self) -> int:
        """Mask of the cycled points."""
        return (1 << self.p) - 1

    def describe(self) -> str:
        return f"C_{self.p} on {{0..{self.p - 1}}}, fixing {self.n_fixed} point(s)"


def _check_dims(g: Permutation, t: Topology) -> None:
    if g.n != t.n:
        raise DimensionMismatch(f"permutation on {g.n} points, topology on {t.n}")


def apply_to_topology(g: Permutation, t: Topology) -> Topology:
    _check_dims(g, t)
    return Topology.trusted(t.n, {g.apply_mask(u) for u in t.opens})


def is_invariant_base(g: Permutation, base: MinimalBase) -> bool:
    """True iff ``g`` permutes the distinct minimal open sets among themselves."""
    members = set(base.distinct.masks)
    return {g.apply_mask(m) for m in members} == members


def is_fixed(g: Permutation, t: Topology) -> bool:
    """Whether ``g t = t``.

    Decided twice, once on the open sets and once on the minimal base; the
    two answers must agree.
    """
    _check_dims(g, t)
    by_opens = apply_to_topology(g, t) == t
    by_base = is_invariant_base(g, minimal_open_sets(t))
    if by_opens != by_base:
        raise AssertionError(f"fixedness tests disagree for {g} on {t}")
    return by_opens


class PrefixInvariance:
    """Engine constraint: the partial preorder on points ``0..k-1`` agrees with
    its image under ``g`` wherever both ends of a pair stay inside the prefix.

    A preorder fixed by ``g`` passes at every prefix, and on the full point set
    the test is exactly ``g``-invariance, so pruning with it counts precisely
    the fixed preorders.
    """

    def __init__(self, g: Permutation):
        self.image = g.image
        self.table = [g.apply_mask(m) for m in range(1 << g.n)]

    def __call__(self, k: int, down: Sequence[int]) -> bool:
        image, table = self.image, self.table
        inside = 0
        for x in range(k):
            if image[x] < k:
                inside |= 1 << x
        g_inside = table[inside]
        for y in range(k):
            if inside >> y & 1:
                if table[down[y] & inside] != down[image[y]] & g_inside:
                    return False
        return True


def _check_reach(n: int) -> None:
    if n > MAX_BACKTRACK:
        raise TooLarge(f"fixed-point counts need at most {MAX_BACKTRACK} points, got {n}")


def count_fixed_by(g: Permutation, t0_only: bool = False, method: str = "pruned",
                   jobs: int = 1) -> int:
    """Number of topologies (T0 ones if ``t0_only``) on ``g.n`` points fixed by ``g``.

    ``method="filter"`` builds every topology and tests it with ``is_fixed``;
    ``"pruned"`` lets the enumeration discard non-invariant prefixes early.
    """
    _check_reach(g.n)
    if method == "pruned":
        return count_preorders(g.n, t0=t0_only, constraint=PrefixInvariance(g), jobs=jobs)
    if method == "filter":
        total = 0
        for down in iter_down_masks(g.n):
            t = from_preorder_masks(g.n, down)
            if t0_only and not is_t0(t):
                continue
            if is_fixed(g, t):
                total += 1
        return total
    raise ValueError(f"unknown method {method!r}")


def from_preorder_masks(n: int, down: Sequence[int]) -> Topology:
    return from_preorder(Preorder.trusted(n, down))


def count_fixed(action: CyclicAction, t0_only: bool = False, method: str = "pruned",
                jobs: int = 1) -> int:
    """Topologies on ``p + n_fixed`` points fixed by the cyclic action.

    For all topologies this is k(n_fixed); for T0 topologies it is
    T0(n_fixed + 1).
    """
    return count_fixed_by(action.perm, t0_only, method, jobs)


@dataclass(frozen=True)
class BurnsideReport:
    action: CyclicAction
    t0_only: bool
    total: int
    fixed: int

    @property
    def residue_ok(self) -> bool:
        return self.total % self.action.p == self.fixed % self.action.p


def burnside_congruence(action: CyclicAction, t0_only: bool = False,
                        jobs: int = 1) -> BurnsideReport:
    """Total count and fixed count, which must agree mod p since every
    non-trivial orbit of C_p has exactly p elements."""
    n = action.n_points
    _check_reach(n)
    table = t0_table(n, jobs) if t0_only else t_table(n, jobs)
    return BurnsideReport(action, t0_only, table[n], count_fixed(action, t0_only, jobs=jobs))
