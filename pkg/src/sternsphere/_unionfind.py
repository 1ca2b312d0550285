import numpy as np


class UnionFind:
    """Disjoint sets over 0..n-1 with path halving and union by size."""

    def __init__(self, n):
        self.parent = np.arange(n, dtype=np.int64)
        self.size = np.ones(n, dtype=np.int64)

    def find(self, i):
        parent = self.parent
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri == rj:
            return ri
        if self.size[ri] < self.size[rj]:
            ri, rj = rj, ri
        self.parent[rj] = ri
        self.size[ri] += self.size[rj]
        return ri

    def union_pairs(self, pairs):
        for i, j in np.asarray(pairs, dtype=np.int64).reshape(-1, 2):
            self.union(int(i), int(j))

    def roots(self, items=None):
        items = range(len(self.parent)) if items is None else items
        return np.array([self.find(int(i)) for i in items], dtype=np.int64)
