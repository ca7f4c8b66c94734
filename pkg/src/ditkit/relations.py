"""Subsets of a finite universe and binary relations over it.

The universe is always {0, ..., n-1}. Subsets and pair relations carry
n so that complements can be taken inside the universe or inside its
full square U x U. Values are immutable and safe to share.

The closure implemented here is the reflexive-symmetric-transitive
closure: cl(S) is the smallest equivalence relation containing S. It is
not a topological closure, because a union of closed sets need not be
closed. Its complement-dual int(S) = cl(complement S) complemented is
the largest partition relation inside S; int accepts arbitrary pair
sets, symmetric or not.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ElementOutOfRangeError, UniverseMismatchError
from .unionfind import UnionFind


def _check_n(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"universe size must be a positive integer, got {n!r}")


def _check_same_universe(a, b) -> None:
    if a.n != b.n:
        raise UniverseMismatchError(f"universe sizes differ: {a.n} != {b.n}")


@dataclass(frozen=True)
class Subset:
    """Immutable subset of {0, ..., n-1}."""

    n: int
    members: frozenset[int]

    def __post_init__(self) -> None:
        _check_n(self.n)
        members = frozenset(self.members)
        object.__setattr__(self, "members", members)
        for u in members:
            if not isinstance(u, int) or isinstance(u, bool) or not 0 <= u < self.n:
                raise ElementOutOfRangeError(
                    f"element {u!r} outside universe of size {self.n}"
                )

    @classmethod
    def of(cls, n: int, members: Iterable[int] = ()) -> "Subset":
        return cls(n, frozenset(members))

    @classmethod
    def empty(cls, n: int) -> "Subset":
        return cls(n, frozenset())

    @classmethod
    def full(cls, n: int) -> "Subset":
        return cls(n, frozenset(range(n)))

    def complement(self) -> "Subset":
        return Subset(self.n, frozenset(range(self.n)) - self.members)

    def union(self, other: "Subset") -> "Subset":
        _check_same_universe(self, other)
        return Subset(self.n, self.members | other.members)

    def intersection(self, other: "Subset") -> "Subset":
        _check_same_universe(self, other)
        return Subset(self.n, self.members & other.members)

    __or__ = union
    __and__ = intersection

    def is_full(self) -> bool:
        return len(self.members) == self.n

    def __contains__(self, u: int) -> bool:
        return u in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))


Pair = tuple[int, int]


@dataclass(frozen=True)
class PairRelation:
    """Immutable set of ordered pairs over {0, ..., n-1} x {0, ..., n-1}."""

    n: int
    pairs: frozenset[Pair]

    def __post_init__(self) -> None:
        _check_n(self.n)
        pairs = frozenset((u, v) for u, v in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        for u, v in pairs:
            if not 0 <= u < self.n or not 0 <= v < self.n:
                raise ElementOutOfRangeError(
                    f"pair ({u}, {v}) outside universe of size {self.n}"
                )

    @classmethod
    def of(cls, n: int, pairs: Iterable[Pair] = ()) -> "PairRelation":
        return cls(n, frozenset(pairs))

    @classmethod
    def empty(cls, n: int) -> "PairRelation":
        return cls(n, frozenset())

    @classmethod
    def diagonal(cls, n: int) -> "PairRelation":
        return cls(n, frozenset((u, u) for u in range(n)))

    @classmethod
    def full(cls, n: int) -> "PairRelation":
        return cls(n, frozenset((u, v) for u in range(n) for v in range(n)))

    def complement(self) -> "PairRelation":
        everything = frozenset((u, v) for u in range(self.n) for v in range(self.n))
        return PairRelation(self.n, everything - self.pairs)

    def union(self, other: "PairRelation") -> "PairRelation":
        _check_same_universe(self, other)
        return PairRelation(self.n, self.pairs | other.pairs)

    def intersection(self, other: "PairRelation") -> "PairRelation":
        _check_same_universe(self, other)
        return PairRelation(self.n, self.pairs & other.pairs)

    __or__ = union
    __and__ = intersection

    def issubset(self, other: "PairRelation") -> bool:
        _check_same_universe(self, other)
        return self.pairs <= other.pairs

    def __contains__(self, pair: Pair) -> bool:
        return pair in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def sorted_pairs(self) -> list[Pair]:
        return sorted(self.pairs)

    def equivalence_violation(self) -> tuple[str, tuple] | None:
        """First violated equivalence axiom with a witness, or None.

        Axioms are checked in the order reflexive, symmetric, transitive,
        scanning elements and pairs in ascending order, so the reported
        witness is deterministic.
        """
        for u in range(self.n):
            if (u, u) not in self.pairs:
                return ("reflexive", ((u, u),))
        for u, v in self.sorted_pairs():
            if (v, u) not in self.pairs:
                return ("symmetric", ((u, v),))
        successors: dict[int, list[int]] = {}
        for u, v in self.sorted_pairs():
            successors.setdefault(u, []).append(v)
        for u, v in self.sorted_pairs():
            for w in successors.get(v, ()):
                if (u, w) not in self.pairs:
                    return ("transitive", ((u, v), (v, w)))
        return None

    def is_equivalence(self) -> bool:
        return self.equivalence_violation() is None

    def is_ditset(self) -> bool:
        """True iff this is some partition's set of distinctions.

        Equivalently: the complement is an equivalence relation, which
        forces anti-reflexivity and symmetry here.
        """
        return self.complement().is_equivalence()


def rst_closure(s: PairRelation) -> PairRelation:
    """Smallest equivalence relation containing s.

    Computed with union-find: every pair merges its endpoints and the
    result is the union of class x class over the resulting classes.
    cl(empty) is the diagonal.
    """
    uf = UnionFind(s.n)
    for u, v in s.pairs:
        uf.union(u, v)
    pairs = set()
    for members in uf.groups().values():
        for u in members:
            for v in members:
                pairs.add((u, v))
    return PairRelation(s.n, frozenset(pairs))


def interior(s: PairRelation) -> PairRelation:
    """Largest partition relation contained in s: cl of the complement,
    complemented. Defined for arbitrary pair sets; the result is always
    anti-reflexive, symmetric, and closed under the duality."""
    return rst_closure(s.complement()).complement()
