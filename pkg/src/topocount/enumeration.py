"""Counting topologies and T0 topologies on n labeled points.

Topologies on ``{0..n-1}`` are in bijection with preorders, so the engine
enumerates preorders.  It grows them one point at a time: a preorder on the
first ``k`` points is extended by a new point ``k`` together with

* ``D``, the points below ``k`` (must be a down-set of the current preorder),
* ``U``, the points above ``k`` (must be an up-set), with every point of ``D``
  below every point of ``U``.

Every such pair gives a transitive extension and every preorder on ``k + 1``
points restricts to exactly one preorder on ``k`` points, so the walk visits
each preorder once and never builds a non-transitive relation.  Partial orders
(T0 topologies) additionally need ``D`` and ``U`` disjoint.

A node carries the minimal open sets (down-closures) of its points and the
full list of its down-sets; the down-sets of a child are derived from the
parent's list, so no node ever scans all ``2**k`` subsets.
"""
from __future__ import annotations

import functools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

from .core import Preorder, _family_is_topology, full_mask, minimal_masks
from .errors import CountOverflow, MissingEntry, OutOfRange, TooLarge

MAX_NAIVE = 4
MAX_BACKTRACK = 7
MAX_STIRLING = 20
UINT64_MAX = 2**64 - 1

# (k, down, downsets): down[y] is the mask of points <= y among the first k.
Node = tuple[int, tuple[int, ...], tuple[int, ...]]
Constraint = Callable[[int, Sequence[int]], bool]

ROOT: Node = (0, (), (0,))


def checked(value: int) -> int:
    if not 0 <= value <= UINT64_MAX:
        raise CountOverflow(f"count {value} does not fit in 64 bits")
    return value


def _check_backtrack(n: int) -> None:
    if n < 0:
        raise OutOfRange(f"n must be non-negative, got {n}")
    if n > MAX_BACKTRACK:
        raise TooLarge(f"preorder enumeration supports n <= {MAX_BACKTRACK}, got {n}")


def _below_all(down: Sequence[int], d: int) -> int:
    """Mask of points y with every point of d below y."""
    s = 0
    for y, dy in enumerate(down):
        if dy & d == d:
            s |= 1 << y
    return s


def children(node: Node, t0: bool = False) -> Iterator[Node]:
    """Extensions of ``node`` by one new point, in a fixed order."""
    k, down, downsets = node
    full = full_mask(k)
    bit = 1 << k
    for d in downsets:
        forbidden = full ^ _below_all(down, d)
        if t0:
            forbidden |= d
        # downsets of the parent that survive next to the new point
        containing_d = [e | bit for e in downsets if e & d == d]
        for e in downsets:
            # U is the complement of e; need U inside the allowed region
            if e & forbidden != forbidden:
                continue
            u = full ^ e
            new_down = tuple([dy | bit if u >> y & 1 else dy for y, dy in enumerate(down)])
            new_downsets = tuple([x for x in downsets if not x & u] + containing_d)
            yield k + 1, new_down + (d | bit,), new_downsets


def _leaf_count(node: Node, t0: bool) -> int:
    """Number of children of ``node`` without building them."""
    k, down, downsets = node
    full = full_mask(k)
    total = 0
    for d in downsets:
        forbidden = full ^ _below_all(down, d)
        if t0:
            forbidden |= d
        total += sum(1 for e in downsets if e & forbidden == forbidden)
    return total


def _count_below(node: Node, n: int, t0: bool, constraint: Optional[Constraint]) -> int:
    k = node[0]
    if k == n:
        return 1
    if constraint is None and k == n - 1:
        return _leaf_count(node, t0)
    total = 0
    for child in children(node, t0):
        if constraint is None or constraint(child[0], child[1]):
            total += _count_below(child, n, t0, constraint)
    return total


def iter_nodes(n: int, t0: bool = False, constraint: Optional[Constraint] = None,
               start: Node = ROOT) -> Iterator[Node]:
    """Depth-first, deterministic walk yielding every complete node on ``n`` points."""
    if start[0] == n:
        yield start
        return
    for child in children(start, t0):
        if constraint is None or constraint(child[0], child[1]):
            yield from iter_nodes(n, t0, constraint, child)


def iter_down_masks(n: int, t0: bool = False,
                    constraint: Optional[Constraint] = None) -> Iterator[tuple[int, ...]]:
    """Yield each preorder on ``n`` points as its tuple of minimal open sets."""
    _check_backtrack(n)
    for _, down, _ in iter_nodes(n, t0, constraint):
        yield down


def shard_frontier(n: int, min_nodes: int, t0: bool = False,
                   constraint: Optional[Constraint] = None) -> list[Node]:
    """Split the search into independent sub-searches.

    Expands the tree breadth-first until a level holds at least ``min_nodes``
    nodes (or the leaves are reached).  The subtrees below the returned nodes
    partition the full search.
    """
    level = [ROOT]
    while level and level[0][0] < n and len(level) < min_nodes:
        level = [c for node in level for c in children(node, t0)
                 if constraint is None or constraint(c[0], c[1])]
    return level


def _count_shard(args) -> int:
    nodes, n, t0, constraint = args
    return sum(_count_below(node, n, t0, constraint) for node in nodes)


def count_preorders(n: int, t0: bool = False, constraint: Optional[Constraint] = None,
                    jobs: int = 1) -> int:
    """Count preorders (or partial orders when ``t0``) on ``n`` points.

    ``constraint(k, down)`` is consulted on every node with ``k`` points and
    prunes the subtree when false; it must hold on a preorder only if it holds
    on every restriction to a prefix of points.  With ``jobs > 1`` the search
    is split into shards counted in worker processes and summed; the result
    never depends on ``jobs``.
    """
    _check_backtrack(n)
    if jobs <= 1:
        return checked(_count_below(ROOT, n, t0, constraint))
    frontier = shard_frontier(n, 8 * jobs, t0, constraint)
    chunks = [frontier[i::jobs] for i in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(_count_shard, [(c, n, t0, constraint) for c in chunks]))
    return checked(sum(parts))


def enumerate_preorders(n: int, visitor: Optional[Callable[[Preorder], None]] = None,
                        jobs: int = 1) -> int:
    """Visit every preorder on ``n`` points once, in a deterministic order.

    Returns the number of preorders, which is T(n).  Without a visitor this is
    a pure count and may run on ``jobs`` worker processes; visiting is always
    sequential in the caller's process.
    """
    _check_backtrack(n)
    if visitor is None:
        return count_preorders(n, jobs=jobs)
    total = 0
    for down in iter_down_masks(n):
        visitor(Preorder.trusted(n, down))
        total += 1
    return checked(total)


def count_t0(n: int, jobs: int = 1) -> int:
    """T0(n): partial orders on ``n`` labeled points."""
    return count_preorders(n, t0=True, jobs=jobs)


def count_topologies_naive(n: int, t0_only: bool = False) -> int:
    """Test every family of subsets of an n-set for being a topology.

    There are ``2**(2**n)`` families, so this stops at n = 4.  It shares
    nothing with the preorder engine and serves as its oracle.  With
    ``t0_only`` a topology counts only if its minimal open sets are distinct.
    """
    if n < 0:
        raise OutOfRange(f"n must be non-negative, got {n}")
    if n > MAX_NAIVE:
        raise TooLarge(f"naive enumeration supports n <= {MAX_NAIVE}, got {n}")
    subsets = range(1 << n)
    total = 0
    for family in range(1 << (1 << n)):
        members = [s for s in subsets if family >> s & 1]
        if _family_is_topology(n, members):
            if t0_only:
                o = minimal_masks(n, members)
                if len(set(o)) < n:
                    continue
            total += 1
    return total


@functools.lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Partitions of an n-set into k nonempty blocks."""
    if not 0 <= k <= n <= MAX_STIRLING:
        raise OutOfRange(f"stirling2 needs 0 <= k <= n <= {MAX_STIRLING}, got ({n}, {k})")
    if n == k:
        return 1
    if k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


@dataclass
class CountTable:
    """Exact counts T(n) or T0(n) with the method that produced each."""

    kind: str
    values: dict[int, int] = field(default_factory=dict)
    method: dict[int, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("T", "T0"):
            raise ValueError(f"kind must be 'T' or 'T0', got {self.kind!r}")
        for v in self.values.values():
            checked(v)

    def put(self, n: int, value: int, method: str) -> None:
        self.values[n] = checked(value)
        self.method[n] = method

    def __getitem__(self, n: int) -> int:
        try:
            return self.values[n]
        except KeyError:
            raise MissingEntry(f"{self.kind}({n}) is not in the table") from None

    def __contains__(self, n: int) -> bool:
        return n in self.values


def count_topologies_partition(n: int, t0_table: CountTable) -> int:
    """T(n) = sum over k of S(n, k) * T0(k).

    Identifying points with equal minimal open sets turns a topology into a T0
    topology on the blocks of a set partition, and back.
    """
    if n < 0:
        raise OutOfRange(f"n must be non-negative, got {n}")
    if n == 0:
        return 1
    return checked(sum(stirling2(n, k) * t0_table[k] for k in range(1, n + 1)))


def t0_table(up_to: int, jobs: int = 1) -> CountTable:
    _check_backtrack(up_to)
    table = CountTable("T0")
    for n in range(up_to + 1):
        table.put(n, _t0_cached(n, jobs), "backtrack")
    return table


def t_table(up_to: int, jobs: int = 1) -> CountTable:
    """T(n) for n <= up_to: engine counts up to 6, the partition formula at 7."""
    _check_backtrack(up_to)
    table = CountTable("T")
    for n in range(min(up_to, 6) + 1):
        table.put(n, _t_cached(n, jobs), "backtrack")
    if up_to >= 7:
        table.put(7, count_topologies_partition(7, t0_table(7, jobs)), "partition-formula")
    return table


@functools.lru_cache(maxsize=None)
def _t0_cached(n: int, jobs: int) -> int:
    return count_t0(n, jobs)


@functools.lru_cache(maxsize=None)
def _t_cached(n: int, jobs: int) -> int:
    return count_preorders(n, jobs=jobs)
