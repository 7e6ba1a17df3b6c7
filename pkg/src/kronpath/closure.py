"""Insert-only transitive closure.

When an edge (i, j) arrives, only the vertices that reach ``i`` but not yet
``j`` need new information, and each of them gains exactly the row of ``j``
plus ``j`` itself.  Both the candidate test and the row merge are whole-row
bitmap operations.
"""
from __future__ import annotations

from typing import Iterable, Iterator

from pyroaring import BitMap

from .boolmat import BoolMatrix, BoolVector


class DynClosure:
    """Irreflexive reachability (paths of one or more edges) under edge inserts.

    ``succ[u]`` holds every vertex reachable from ``u``; ``pred`` is its
    transpose and is kept in sync on every insertion.
    """

    def __init__(self, dim: int):
        if dim < 0:
            raise ValueError(f"dimension must be non-negative, got {dim}")
        self.dim = dim
        self.succ: dict[int, BitMap] = {}
        self.pred: dict[int, BitMap] = {}
        self._pairs = 0

    def _check(self, i: int) -> None:
        if not 0 <= i < self.dim:
            raise IndexError(f"vertex {i} out of range for dim {self.dim}")

    def insert_edge(self, i: int, j: int) -> list[tuple[int, int]]:
        """Insert edge (i, j) and return the newly reachable pairs, sorted."""
        self._check(i)
        self._check(j)
        succ, pred = self.succ, self.pred
        si = succ.get(i)
        if si is not None and j in si:
            return []

        gain = succ[j].copy() if j in succ else BitMap()
        gain.add(j)
        sources = pred[i].copy() if i in pred else BitMap()
        sources.add(i)
        pj = pred.get(j)
        if pj is not None:
            sources -= pj

        new_pairs: list[tuple[int, int]] = []
        # column-wise: which sources are new predecessors of v
        for v in gain:
            pv = pred.get(v)
            fresh = sources - pv if pv is not None else sources.copy()
            if not fresh:
                continue
            if pv is None:
                pred[v] = fresh
            else:
                pv |= fresh
            new_pairs.extend((u, v) for u in fresh)
        for u in sources:
            su = succ.get(u)
            if su is None:
                succ[u] = gain.copy()
            else:
                su |= gain
        self._pairs += len(new_pairs)
        new_pairs.sort()
        return new_pairs

    def insert_edges(self, edges: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
        """Insert several edges; concatenated per-edge deltas."""
        out: list[tuple[int, int]] = []
        for i, j in edges:
            out.extend(self.insert_edge(i, j))
        return out

    def reachable(self, i: int, j: int) -> bool:
        self._check(i)
        self._check(j)
        s = self.succ.get(i)
        return s is not None and j in s

    def successors(self, i: int) -> BoolVector:
        self._check(i)
        return BoolVector(self.dim, self.succ.get(i, BitMap()))

    def predecessors(self, j: int) -> BoolVector:
        self._check(j)
        return BoolVector(self.dim, self.pred.get(j, BitMap()))

    @property
    def nnz(self) -> int:
        return self._pairs

    def pairs(self) -> Iterator[tuple[int, int]]:
        for u in sorted(self.succ):
            for v in self.succ[u]:
                yield u, v

    def to_matrix(self) -> BoolMatrix:
        return BoolMatrix(self.dim, self.succ)

    @classmethod
    def from_matrix(cls, m: BoolMatrix) -> DynClosure:
        c = cls(m.dim)
        c.insert_edges(m.coords())
        return c
