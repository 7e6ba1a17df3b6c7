"""Witness-path extraction from a built index.

A nonterminal ``N`` derives a graph path from ``vs`` to ``vf`` exactly when
the product graph has a walk from ``(start_N, vs)`` to ``(f, vf)`` for some
final state ``f`` of ``N``'s box.  Each walk edge stands for a terminal edge
of the graph or, recursively, for any path derived by a nonterminal labeling
the corresponding machine transition.

Path sets may be infinite, so extraction is bounded by a :class:`Budget` and
proceeds by word length: all paths of length 0, then 1, and so on.  For each
length the sets are a least fixpoint over (box, target vertex, product vertex)
frames, which handles recursion and ε-derivations without unbounded descent.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator

from pyroaring import BitMap

from .index import KronIndex

Edge = tuple[int, str, int]
RawPath = tuple[Edge, ...]


@dataclass(frozen=True)
class Budget:
    max_word_length: int = 8
    max_paths: int = 100
    max_index_path_edges: int = 64

    def __post_init__(self):
        for name in ("max_word_length", "max_paths", "max_index_path_edges"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")


@dataclass(frozen=True)
class GraphPath:
    """A chain of labeled edges; ``origin`` names the first vertex.

    The empty path (no edges) sits at ``origin``.
    """

    origin: str
    edges: tuple[tuple[str, str, str], ...] = ()

    def __post_init__(self):
        at = self.origin
        for src, _, dst in self.edges:
            if src != at:
                raise ValueError(f"edge from {src!r} does not continue path at {at!r}")
            at = dst

    @property
    def source(self) -> str:
        return self.origin

    @property
    def target(self) -> str:
        return self.edges[-1][2] if self.edges else self.origin

    @property
    def word(self) -> tuple[str, ...]:
        return word_of(self)

    def __len__(self) -> int:
        return len(self.edges)

    def __str__(self) -> str:
        parts = [self.origin]
        for _, label, dst in self.edges:
            parts.append(f"-{label}-> {dst}")
        return " ".join(parts)


IndexPath = tuple[tuple[tuple[int, int], tuple[int, int]], ...]


def word_of(path: GraphPath) -> tuple[str, ...]:
    return tuple(label for _, label, _ in path.edges)


def gen_index_paths(
    idx: KronIndex, source: tuple[int, int], target: tuple[int, int], budget: Budget
) -> Iterator[IndexPath]:
    """Walks of one or more product edges from ``source`` to ``target``.

    Composite vertices are ``(state, vertex index)`` pairs.  Walks come out
    breadth-first: by edge count, then by the sequence of successor indices.
    Only walks that can still reach ``target`` are extended.
    """
    n = idx.n
    dim = idx.m3.dim
    start = idx.composite(*source)
    goal = idx.composite(*target)
    if not (0 <= start < dim and 0 <= goal < dim):
        raise IndexError("composite vertex out of range")
    reach = idx.closure
    layer: list[tuple[int, tuple[int, ...]]] = [(start, ())]
    for _ in range(budget.max_index_path_edges):
        nxt = []
        for at, trail in layer:
            for j in idx.m3.row(at):
                if j != goal and not reach.reachable(j, goal):
                    continue
                walk = trail + (j,)
                if j == goal:
                    yield _as_index_path(start, walk, n)
                nxt.append((j, walk))
        if not nxt:
            return
        layer = nxt


def _as_index_path(start: int, walk: tuple[int, ...], n: int) -> IndexPath:
    nodes = (start,) + walk
    return tuple(
        (divmod(a, n), divmod(b, n)) for a, b in zip(nodes, nodes[1:])
    )


class PathExtractor:
    """Memoizing solver shared by all queries against one index."""

    def __init__(self, idx: KronIndex):
        self.idx = idx
        self.n = idx.n
        rsm = idx.rsm
        self.terminals = set(rsm.terminals)
        # machine labels per (state, state) transition
        self.moves: dict[tuple[int, int], list[str]] = {}
        for label, m in rsm.transitions.items():
            for s, t in m.coords():
                self.moves.setdefault((s, t), []).append(label)
        self.values: dict[tuple, set[RawPath]] = {}
        self.readers: dict[tuple, set[tuple]] = {}
        self.targets: dict[tuple[str, int], BitMap] = {}

    def _target_set(self, nt: str, u: int) -> BitMap:
        key = (nt, u)
        t = self.targets.get(key)
        if t is None:
            box = self.idx.rsm.boxes[nt]
            t = self.targets[key] = BitMap(f * self.n + u for f in box.finals)
        return t

    def _live(self, c: int, targets: BitMap) -> bool:
        if c in targets:
            return True
        succ = self.idx.closure.succ.get(c)
        return succ is not None and succ.intersection_cardinality(targets) > 0

    def paths(self, vs: int, vf: int, nt: str, length: int) -> set[RawPath]:
        """All derived paths of exactly ``length`` edges from ``vs`` to ``vf``."""
        if not self.idx.graph_final[nt][vs, vf]:
            return set()
        key = (nt, vf, self.idx.rsm.boxes[nt].start * self.n + vs, length)
        self._solve(key)
        return self.values[key]

    def _solve(self, root: tuple) -> None:
        if root in self.values:
            return
        self.values[root] = set()
        work = deque([root])
        queued = {root}
        while work:
            key = work.popleft()
            queued.discard(key)
            new = self._evaluate(key, work, queued)
            if len(new) != len(self.values[key]):
                self.values[key] = new
                for reader in self.readers.get(key, ()):
                    if reader not in queued:
                        queued.add(reader)
                        work.append(reader)

    def _get(self, key: tuple, reader: tuple, work: deque, queued: set) -> set[RawPath]:
        self.readers.setdefault(key, set()).add(reader)
        if key not in self.values:
            self.values[key] = set()
            queued.add(key)
            work.append(key)
        return self.values[key]

    def _evaluate(self, key: tuple, work: deque, queued: set) -> set[RawPath]:
        nt, u, c, length = key
        n = self.n
        gf = self.idx.graph_final
        targets = self._target_set(nt, u)
        out: set[RawPath] = set()
        if length == 0 and c in targets:
            out.add(())
        s, x = divmod(c, n)
        for c2 in self.idx.m3.row(c):
            if not self._live(c2, targets):
                continue
            s2, y = divmod(c2, n)
            labels = self.moves.get((s, s2), ())
            for first in range(0, length + 1):
                if first == 0 and x != y:
                    continue
                heads: set[RawPath] = set()
                for label in labels:
                    if not gf[label][x, y]:
                        continue
                    if label in self.terminals:
                        if first == 1:
                            heads.add(((x, label, y),))
                    else:
                        sub = (label, y, self.idx.rsm.boxes[label].start * n + x, first)
                        heads |= self._get(sub, key, work, queued)
                if not heads:
                    continue
                tails = self._get((nt, u, c2, length - first), key, work, queued)
                for h in heads:
                    for t in tails:
                        out.add(h + t)
        return out


def get_paths(
    idx: KronIndex,
    vs: str,
    vf: str,
    nt: str,
    budget: Budget = Budget(),
    extractor: PathExtractor | None = None,
) -> Iterator[GraphPath]:
    """Distinct paths from ``vs`` to ``vf`` whose words ``nt`` derives.

    Shortest words first, ties in order of (source, label, target) indices;
    at most ``budget.max_paths`` paths of at most ``budget.max_word_length``
    edges.  The empty path is produced when ``nt`` derives the empty word and
    ``vs == vf``.
    """
    idx.box(nt)
    s, f = idx.vertex_index(vs), idx.vertex_index(vf)
    if budget.max_paths == 0 or not idx.graph_final[nt][s, f]:
        return
    ex = extractor if extractor is not None else PathExtractor(idx)
    names = idx.vertex_names
    produced = 0
    for length in range(budget.max_word_length + 1):
        for raw in sorted(ex.paths(s, f, nt, length)):
            yield GraphPath(
                names[s], tuple((names[a], label, names[b]) for a, label, b in raw)
            )
            produced += 1
            if produced >= budget.max_paths:
                return


def format_path(path: GraphPath) -> str:
    return str(path)
