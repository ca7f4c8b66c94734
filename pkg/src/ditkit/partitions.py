"""Partitions of a finite universe and the lattice they form.

A partition is stored as a restricted-growth sequence: position u holds
the block index of element u, with blocks numbered in order of first
appearance. The encoding is canonical, so structural equality is
partition equality, and sorting sequences lexicographically gives a
stable enumeration order.

The refinement order used throughout puts the all-singletons partition
(discrete) at the top and the one-block partition (indiscrete) at the
bottom: p is below q exactly when q distinguishes every pair p does.
Distinctions play the role for partitions that elements play for
subsets, which is what makes the truth-functional connectives liftable:
apply the subset operation to the distinction sets inside U x U, then
take the interior.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import Enum
from typing import Hashable, Iterable, Iterator, Sequence

from .errors import (
    ElementOutOfRangeError,
    EmptyBlockError,
    MissingElementError,
    NotEquivalenceError,
    OverlappingBlocksError,
    ResourceLimitError,
    UniverseMismatchError,
    UnknownConnectiveError,
)
from .limits import DEFAULT_LIMITS, Limits
from .relations import PairRelation, Subset, _check_n, _check_same_universe, interior
from .unionfind import UnionFind


@dataclass(frozen=True)
class Partition:
    """A set partition of {0, ..., n-1} in restricted-growth form."""

    n: int
    assignment: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_n(self.n)
        assignment = tuple(self.assignment)
        object.__setattr__(self, "assignment", assignment)
        if len(assignment) != self.n:
            raise ValueError(
                f"assignment length {len(assignment)} != universe size {self.n}"
            )
        if assignment[0] != 0:
            raise ValueError("restricted-growth sequence must start at 0")
        peak = 0
        for i, a in enumerate(assignment[1:], start=1):
            if not isinstance(a, int) or not 0 <= a <= peak + 1:
                raise ValueError(f"not a restricted-growth sequence at position {i}")
            peak = max(peak, a)

    def block_count(self) -> int:
        return max(self.assignment) + 1

    def block_of(self, u: int) -> int:
        if not 0 <= u < self.n:
            raise ElementOutOfRangeError(f"element {u} outside universe of size {self.n}")
        return self.assignment[u]

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        """Blocks in order of first appearance; elements ascending."""
        out: list[list[int]] = [[] for _ in range(self.block_count())]
        for u, b in enumerate(self.assignment):
            out[b].append(u)
        return tuple(tuple(block) for block in out)

    def dit_count(self) -> int:
        """Number of ordered pairs this partition distinguishes."""
        sizes = [0] * self.block_count()
        for b in self.assignment:
            sizes[b] += 1
        return self.n * self.n - sum(s * s for s in sizes)

    def __str__(self) -> str:
        return "|".join(",".join(str(u) for u in block) for block in self.blocks())


def _canonical_rgs(labels: Sequence[Hashable]) -> Partition:
    """Relabel arbitrary block labels into first-appearance order."""
    remap: dict[Hashable, int] = {}
    out = []
    for label in labels:
        if label not in remap:
            remap[label] = len(remap)
        out.append(remap[label])
    return Partition(len(labels), tuple(out))


def partition_from_blocks(n: int, blocks: Iterable[Iterable[int]]) -> Partition:
    """Build a partition from blocks that must tile {0, ..., n-1}."""
    _check_n(n)
    owner: dict[int, int] = {}
    for index, block in enumerate(blocks):
        items = list(block)
        if not items:
            raise EmptyBlockError(f"block {index} is empty")
        for u in items:
            if not isinstance(u, int) or isinstance(u, bool) or not 0 <= u < n:
                raise ElementOutOfRangeError(
                    f"element {u!r} outside universe of size {n}"
                )
            if u in owner:
                raise OverlappingBlocksError(f"element {u} appears more than once")
            owner[u] = index
    missing = [u for u in range(n) if u not in owner]
    if missing:
        raise MissingElementError(f"elements not covered by any block: {missing}")
    return _canonical_rgs([owner[u] for u in range(n)])


def discrete(n: int) -> Partition:
    """All-singletons partition; top of the refinement order."""
    _check_n(n)
    return Partition(n, tuple(range(n)))


def indiscrete(n: int) -> Partition:
    """One-block partition; bottom of the refinement order."""
    _check_n(n)
    return Partition(n, (0,) * n)


def dit(p: Partition) -> PairRelation:
    """Ordered pairs whose endpoints lie in different blocks."""
    a = p.assignment
    return PairRelation(
        p.n,
        frozenset(
            (u, v) for u in range(p.n) for v in range(p.n) if a[u] != a[v]
        ),
    )


def indit(p: Partition) -> PairRelation:
    """Ordered pairs whose endpoints share a block: the equivalence
    relation of the partition, the complement of dit(p)."""
    a = p.assignment
    return PairRelation(
        p.n,
        frozenset(
            (u, v) for u in range(p.n) for v in range(p.n) if a[u] == a[v]
        ),
    )


def partition_from_equivalence(r: PairRelation) -> Partition:
    """Partition whose blocks are the classes of the equivalence r."""
    violation = r.equivalence_violation()
    if violation is not None:
        axiom, witness = violation
        raise NotEquivalenceError(axiom, witness)
    labels = []
    for u in range(r.n):
        labels.append(min(v for v in range(r.n) if (u, v) in r.pairs))
    return _canonical_rgs(labels)


def refines(p: Partition, q: Partition) -> bool:
    """True iff every block of p sits inside some block of q."""
    _check_same_universe(p, q)
    image: dict[int, int] = {}
    for u in range(p.n):
        b = p.assignment[u]
        c = q.assignment[u]
        if image.setdefault(b, c) != c:
            return False
    return True


def refines_via_ditsets(p: Partition, q: Partition) -> bool:
    """Same relation computed on the distinction sets: p refines q
    exactly when dit(q) is contained in dit(p)."""
    _check_same_universe(p, q)
    return dit(q).pairs <= dit(p).pairs


def join(p: Partition, q: Partition) -> Partition:
    """Least upper bound in refinement order: the partition of nonempty
    pairwise block intersections."""
    _check_same_universe(p, q)
    return _canonical_rgs(list(zip(p.assignment, q.assignment)))


def join_via_ditsets(p: Partition, q: Partition) -> Partition:
    """Join computed from distinction sets: dit of the join is the plain
    union dit(p) | dit(q), no interior required."""
    _check_same_universe(p, q)
    return partition_from_equivalence((dit(p) | dit(q)).complement())


def meet(p: Partition, q: Partition) -> Partition:
    """Greatest lower bound: connected components of the union of the
    two block equivalences."""
    _check_same_universe(p, q)
    uf = UnionFind(p.n)
    for part in (p, q):
        for block in part.blocks():
            first = block[0]
            for u in block[1:]:
                uf.union(first, u)
    return _canonical_rgs([uf.find(u) for u in range(p.n)])


def meet_via_interior(p: Partition, q: Partition) -> Partition:
    """Meet computed from distinction sets: the interior of
    dit(p) & dit(q) is exactly the meet's distinction set."""
    _check_same_universe(p, q)
    inner = interior(dit(p) & dit(q))
    return partition_from_equivalence(inner.complement())


class Connective(Enum):
    NOT = "not"
    AND = "and"
    OR = "or"
    IMPLIES = "implies"
    IFF = "iff"
    TOP = "top"
    BOTTOM = "bottom"


CONNECTIVE_ARITY = {
    Connective.NOT: 1,
    Connective.AND: 2,
    Connective.OR: 2,
    Connective.IMPLIES: 2,
    Connective.IFF: 2,
    Connective.TOP: 0,
    Connective.BOTTOM: 0,
}


def lift_connective(
    conn: Connective, operands: Iterable[Partition], *, n: int | None = None
) -> Partition:
    """Interpret a truth-functional connective on partitions.

    Apply the corresponding Boolean operation to the operands'
    distinction sets inside U x U, take the interior so the result is
    again a partition's distinction set, and return that partition.
    The universe size n is only needed for the 0-ary connectives.
    """
    if not isinstance(conn, Connective):
        raise UnknownConnectiveError(f"unknown connective {conn!r}")
    ops = tuple(operands)
    arity = CONNECTIVE_ARITY[conn]
    if len(ops) != arity:
        raise UnknownConnectiveError(
            f"connective {conn.value} takes {arity} operand(s), got {len(ops)}"
        )
    if ops:
        for other in ops[1:]:
            _check_same_universe(ops[0], other)
        if n is not None and n != ops[0].n:
            raise UniverseMismatchError(
                f"explicit n={n} disagrees with operand universe {ops[0].n}"
            )
        n = ops[0].n
    elif n is None:
        raise ValueError("universe size n is required for 0-ary connectives")
    _check_n(n)
    return _lift(conn, ops, n)


@functools.lru_cache(maxsize=None)
def _lift(conn: Connective, ops: tuple[Partition, ...], n: int) -> Partition:
    full = frozenset((u, v) for u in range(n) for v in range(n))
    dits = [dit(p).pairs for p in ops]
    if conn is Connective.NOT:
        raw = full - dits[0]
    elif conn is Connective.AND:
        raw = dits[0] & dits[1]
    elif conn is Connective.OR:
        raw = dits[0] | dits[1]
    elif conn is Connective.IMPLIES:
        raw = (full - dits[0]) | dits[1]
    elif conn is Connective.IFF:
        raw = (dits[0] & dits[1]) | ((full - dits[0]) & (full - dits[1]))
    elif conn is Connective.TOP:
        raw = full
    else:
        raw = frozenset()
    inner = interior(PairRelation(n, raw))
    return partition_from_equivalence(inner.complement())


def bell_number(n: int) -> int:
    """Number of partitions of an n-element set."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def enumerate_partitions(
    n: int, limits: Limits = DEFAULT_LIMITS
) -> Iterator[Partition]:
    """Yield every partition of {0, ..., n-1} exactly once, in
    lexicographic restricted-growth order.

    Each call returns a fresh, independently restartable stream.
    """
    _check_n(n)
    if n > limits.max_lattice_n:
        raise ResourceLimitError(
            f"enumerating Bell({n}) = {bell_number(n)} partitions exceeds "
            f"the cap n <= {limits.max_lattice_n}"
        )

    def generate() -> Iterator[Partition]:
        prefix = [0] * n

        def rec(i: int, peak: int) -> Iterator[Partition]:
            if i == n:
                yield Partition(n, tuple(prefix))
                return
            for digit in range(peak + 2):
                prefix[i] = digit
                yield from rec(i + 1, max(peak, digit))

        yield from rec(1, 0)

    return generate()


def subset_lattice_nodes(n: int, limits: Limits = DEFAULT_LIMITS) -> list[Subset]:
    """All subsets of {0, ..., n-1} in ascending bitmask order."""
    _check_n(n)
    if n > limits.max_lattice_n:
        raise ResourceLimitError(
            f"enumerating 2**{n} subsets exceeds the cap n <= {limits.max_lattice_n}"
        )
    return [
        Subset(n, frozenset(u for u in range(n) if mask >> u & 1))
        for mask in range(2**n)
    ]


def hasse_cover_edges(kind: str, n: int, limits: Limits = DEFAULT_LIMITS) -> list:
    """Covering pairs (x, y) of the chosen lattice: x strictly below y
    with nothing strictly between.

    kind "subset" orders by inclusion; kind "partition" uses refinement
    order with the one-block partition at the bottom. Edges come back
    sorted by enumeration position of their endpoints.
    """
    if kind == "partition":
        return _partition_covers(n, limits)
    if kind == "subset":
        return _subset_covers(n, limits)
    raise ValueError(f"kind must be 'subset' or 'partition', got {kind!r}")


def _merge_blocks(p: Partition, bi: int, bj: int) -> Partition:
    return _canonical_rgs([bi if a == bj else a for a in p.assignment])


def _partition_covers(n: int, limits: Limits) -> list[tuple[Partition, Partition]]:
    # y covers x exactly when x is y with two blocks merged
    nodes = list(enumerate_partitions(n, limits))
    index = {p: i for i, p in enumerate(nodes)}
    edges = []
    for iy, y in enumerate(nodes):
        count = y.block_count()
        for bi in range(count):
            for bj in range(bi + 1, count):
                edges.append((index[_merge_blocks(y, bi, bj)], iy))
    edges.sort()
    return [(nodes[ix], nodes[iy]) for ix, iy in edges]


def _subset_covers(n: int, limits: Limits) -> list[tuple[Subset, Subset]]:
    nodes = subset_lattice_nodes(n, limits)
    edges = []
    for mask in range(2**n):
        for u in range(n):
            if not mask >> u & 1:
                edges.append((mask, mask | 1 << u))
    edges.sort()
    return [(nodes[a], nodes[b]) for a, b in edges]
