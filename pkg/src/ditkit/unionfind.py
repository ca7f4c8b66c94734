"""Array-backed union-find over {0, ..., n-1}."""
from __future__ import annotations


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, u: int) -> int:
        root = u
        while self.parent[root] != root:
            root = self.parent[root]
        # path compression
        while self.parent[u] != root:
            self.parent[u], u = root, self.parent[u]
        return root

    def union(self, u: int, v: int) -> bool:
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return False
        if self.size[ru] < self.size[rv]:
            ru, rv = rv, ru
        self.parent[rv] = ru
        self.size[ru] += self.size[rv]
        return True

    def groups(self) -> dict[int, list[int]]:
        """Map each root to the sorted members of its class."""
        out: dict[int, list[int]] = {}
        for u in range(len(self.parent)):
            out.setdefault(self.find(u), []).append(u)
        return out
