"""Index construction: iterated Kronecker products with incremental closure.

The product graph pairs machine state ``s`` with graph vertex ``v`` at index
``s * n + v``.  A path in it from a box's start state to one of its final
states, over graph vertices ``x`` and ``y``, means the box's nonterminal
derives some path from ``x`` to ``y``; such edges are fed back into the graph
and the product is extended with just the new edges until nothing changes.
"""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field

from pyroaring import BitMap

from .boolmat import BoolMatrix, MatrixSet, kron_set, union_into
from .closure import DynClosure
from .graph import LabeledGraph
from .language.rsm import Box, Rsm

log = logging.getLogger(__name__)

MAGIC = "kronpath-index"
VERSION = 1


class LabelCollisionError(ValueError):
    """A graph edge label coincides with a nonterminal name."""


class UnknownNonterminalError(KeyError):
    pass


class IndexFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


@dataclass
class IterationStats:
    m3_added: int
    closure_added: int
    new_edges: list[tuple[str, int, int]]
    m3_delta: BoolMatrix | None = None


@dataclass
class KronIndex:
    rsm: Rsm
    vertex_names: list[str]
    graph_final: MatrixSet
    m3: BoolMatrix
    iterations: int = 0
    history: list[IterationStats] = field(default_factory=list)
    _closure: DynClosure | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return len(self.vertex_names)

    @property
    def k(self) -> int:
        return self.rsm.state_count

    @property
    def closure(self) -> DynClosure:
        """Transitive closure of ``m3``; rebuilt on demand after loading."""
        if self._closure is None:
            self._closure = DynClosure.from_matrix(self.m3)
        return self._closure

    @property
    def productive_iterations(self) -> int:
        return sum(1 for h in self.history if h.m3_added)

    def composite(self, state: int, vertex: int) -> int:
        return state * self.n + vertex

    def split(self, index: int) -> tuple[int, int]:
        return divmod(index, self.n)

    def __post_init__(self):
        self._vix = {v: i for i, v in enumerate(self.vertex_names)}

    def vertex_index(self, name: str) -> int:
        try:
            return self._vix[name]
        except KeyError:
            raise KeyError(f"unknown vertex {name!r}") from None

    def box(self, nt: str) -> Box:
        try:
            return self.rsm.boxes[nt]
        except KeyError:
            raise UnknownNonterminalError(f"unknown nonterminal {nt!r}") from None

    def pair_indices(self, nt: str) -> list[tuple[int, int]]:
        self.box(nt)
        return list(self.graph_final[nt].coords())

    def pair_counts(self) -> dict[str, int]:
        return {nt: self.graph_final[nt].nnz for nt in self.rsm.nonterminals}

    def structurally_equal(self, other: KronIndex) -> bool:
        return (
            self.vertex_names == other.vertex_names
            and self.rsm.state_count == other.rsm.state_count
            and self.rsm.boxes == other.rsm.boxes
            and self.rsm.start_nonterminal == other.rsm.start_nonterminal
            and self.rsm.transitions == other.rsm.transitions
            and self.graph_final == other.graph_final
            and self.m3 == other.m3
        )


def _check_labels(rsm: Rsm, g: LabeledGraph) -> None:
    clash = sorted(set(g.labels) & set(rsm.nonterminals))
    if clash:
        raise LabelCollisionError(
            f"graph labels {clash} coincide with nonterminal names; rename them"
        )


def build_index(rsm: Rsm, g: LabeledGraph, keep_deltas: bool = False) -> KronIndex:
    """Evaluate the query machine ``rsm`` over ``g``.

    Returns the augmented graph matrices (one per terminal label and one per
    nonterminal, where ``graph_final[N][x, y]`` holds iff some path from ``x``
    to ``y`` spells a word derivable from ``N``), the final product matrix and
    its closure.  With ``keep_deltas`` each iteration's new product edges are
    kept in ``history`` for inspection.
    """
    _check_labels(rsm, g)
    n = g.n
    graph_final = g.matrices.copy()
    dim = rsm.state_count * n
    m3 = BoolMatrix(dim)
    closure = DynClosure(dim)

    # nonterminals deriving the empty word relate every vertex to itself
    for nt in rsm.epsilon_nonterminals():
        for v in range(n):
            graph_final.set(nt, v, v)

    delta = graph_final.copy()
    start_final = rsm.start_final_map()
    starts = {s for s, _ in start_final}
    machine_labels = set(rsm.transitions.labels())
    history: list[IterationStats] = []

    while any(l in machine_labels for l in delta.labels()):
        product = kron_set(rsm.transitions, delta)
        fresh = product.difference(m3)
        union_into(m3, fresh)
        delta = MatrixSet(n)

        added = 0
        found: list[tuple[str, int, int]] = []
        for i, j in fresh.coords():
            pairs = closure.insert_edge(i, j)
            added += len(pairs)
            for a, b in pairs:
                s, x = divmod(a, n)
                if s not in starts:
                    continue
                f, y = divmod(b, n)
                for nt in start_final.get((s, f), ()):
                    if graph_final.set(nt, x, y):
                        delta.set(nt, x, y)
                        found.append((nt, x, y))
        history.append(
            IterationStats(fresh.nnz, added, found, fresh if keep_deltas else None)
        )
        log.debug(
            "iteration %d: +%d product edges, +%d closure pairs, +%d nonterminal edges",
            len(history), fresh.nnz, added, len(found),
        )

    return KronIndex(
        rsm=rsm,
        vertex_names=list(g.vertex_names),
        graph_final=graph_final,
        m3=m3,
        iterations=len(history),
        history=history,
        _closure=closure,
    )


def reachable_pairs(idx: KronIndex, nt: str) -> set[tuple[str, str]]:
    """Vertex-name pairs connected by a path whose word ``nt`` derives."""
    names = idx.vertex_names
    return {(names[x], names[y]) for x, y in idx.pair_indices(nt)}


# --- serialization ---------------------------------------------------------

def _check_token(kind: str, value: str) -> str:
    if not value or any(c.isspace() for c in value):
        raise ValueError(f"{kind} {value!r} cannot be serialized (empty or contains whitespace)")
    return value


def _write_matrix_set(out: list[str], section: str, ms: MatrixSet) -> None:
    labels = ms.labels()
    out.append(f"{section} {len(labels)}")
    for label in labels:
        m = ms.by_label[label]
        out.append(f"label {_check_token('label', label)} {m.nnz}")
        out.extend(f"{i} {j}" for i, j in m.coords())


def dump_index(idx: KronIndex, include_closure: bool = False) -> str:
    """Sectioned text form of the index; see :func:`load_index`."""
    rsm = idx.rsm
    out = [f"{MAGIC} {VERSION}", f"n {idx.n}", f"k {idx.k}"]
    out.append(f"vertices {idx.n}")
    out.extend(_check_token("vertex name", v) for v in idx.vertex_names)
    out.append(f"start {rsm.start_nonterminal}")
    out.append(f"terminals {len(rsm.terminals)}")
    out.extend(_check_token("terminal", t) for t in rsm.terminals)
    out.append(f"boxes {len(rsm.boxes)}")
    for name, b in rsm.boxes.items():
        finals = " ".join(str(f) for f in sorted(b.finals))
        out.append(
            f"{_check_token('nonterminal', name)} {b.start} {b.lo} {b.hi} {len(b.finals)}"
            + (f" {finals}" if finals else "")
        )
    _write_matrix_set(out, "rsm", rsm.transitions)
    _write_matrix_set(out, "graph", idx.graph_final)
    out.append(f"m3 {idx.m3.nnz}")
    out.extend(f"{i} {j}" for i, j in idx.m3.coords())
    out.append(f"iterations {idx.iterations}")
    if include_closure:
        c = idx.closure
        out.append(f"closure {c.nnz}")
        out.extend(f"{i} {j}" for i, j in c.pairs())
    out.append("end")
    return "".join(line + "\n" for line in out)


def save_index(idx: KronIndex, path, include_closure: bool = False) -> None:
    path = os.fspath(path)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dump_index(idx, include_closure))
    except OSError as e:
        raise OSError(f"cannot write index {path}: {e.strerror}") from e


class _Reader:
    def __init__(self, lines: list[str]):
        self.lines = lines
        self.pos = 0

    def next(self) -> str:
        if self.pos >= len(self.lines):
            raise IndexFormatError("unexpected end of file", self.pos + 1)
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def header(self, key: str) -> list[str]:
        parts = self.next().split()
        if not parts or parts[0] != key:
            raise IndexFormatError(f"expected section {key!r}", self.pos)
        return parts[1:]

    def ints(self, parts: list[str], count: int | None = None) -> list[int]:
        try:
            values = [int(p) for p in parts]
        except ValueError:
            raise IndexFormatError("expected integers", self.pos) from None
        if count is not None and len(values) != count:
            raise IndexFormatError(f"expected {count} integer(s)", self.pos)
        if any(v < 0 for v in values):
            raise IndexFormatError("negative integer", self.pos)
        return values

    def count(self, key: str) -> int:
        return self.ints(self.header(key), 1)[0]

    def coords(self, count: int, dim: int) -> BoolMatrix:
        m = BoolMatrix(dim)
        for _ in range(count):
            i, j = self.ints(self.next().split(), 2)
            if i >= dim or j >= dim:
                raise IndexFormatError(f"coordinate ({i}, {j}) out of range {dim}", self.pos)
            m.set(i, j)
        return m

    def matrix_set(self, key: str, dim: int) -> MatrixSet:
        ms = MatrixSet(dim)
        for _ in range(self.count(key)):
            parts = self.header("label")
            if len(parts) != 2:
                raise IndexFormatError("malformed label header", self.pos)
            (nnz,) = self.ints(parts[1:], 1)
            ms.by_label[parts[0]] = self.coords(nnz, dim)
        return ms


def parse_index(text: str) -> KronIndex:
    r = _Reader(text.splitlines())
    head = r.next().split()
    if len(head) != 2 or head[0] != MAGIC:
        raise IndexFormatError("not a kronpath index file", 1)
    if head[1] != str(VERSION):
        raise IndexFormatError(f"unsupported index version {head[1]} (expected {VERSION})", 1)
    n = r.count("n")
    k = r.count("k")
    if r.count("vertices") != n:
        raise IndexFormatError("vertex count does not match n", r.pos)
    names = [r.next() for _ in range(n)]
    start_parts = r.header("start")
    if len(start_parts) != 1:
        raise IndexFormatError("malformed start line", r.pos)
    start = start_parts[0]
    terminals = tuple(r.next() for _ in range(r.count("terminals")))
    boxes: dict[str, Box] = {}
    for _ in range(r.count("boxes")):
        parts = r.next().split()
        if len(parts) < 5:
            raise IndexFormatError("malformed box entry", r.pos)
        s, lo, hi, nf, *finals = r.ints(parts[1:])
        if len(finals) != nf or not (lo <= s < hi <= k) or any(not lo <= f < hi for f in finals):
            raise IndexFormatError(f"inconsistent box {parts[0]!r}", r.pos)
        boxes[parts[0]] = Box(s, frozenset(finals), lo, hi)
    if start not in boxes:
        raise IndexFormatError(f"start nonterminal {start!r} has no box", r.pos)
    transitions = r.matrix_set("rsm", k)
    graph_final = r.matrix_set("graph", n)
    m3 = r.coords(r.count("m3"), k * n)
    iterations = r.count("iterations")
    closure = None
    tail = r.next().split()
    if tail and tail[0] == "closure":
        (nnz,) = r.ints(tail[1:], 1)
        cm = r.coords(nnz, k * n)
        closure = DynClosure(k * n)
        for i, row in cm.rows.items():
            closure.succ[i] = row
        for i, j in cm.coords():
            closure.pred.setdefault(j, BitMap()).add(i)
        closure._pairs = nnz
        tail = r.next().split()
    if tail != ["end"]:
        raise IndexFormatError("expected 'end'", r.pos)
    rsm = Rsm(k, boxes, transitions, start, terminals)
    return KronIndex(rsm, names, graph_final, m3, iterations, [], closure)


def load_index(path) -> KronIndex:
    path = os.fspath(path)
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise OSError(f"cannot read index {path}: {e.strerror}") from e
    return parse_index(text)
