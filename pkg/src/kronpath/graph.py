"""Edge-labeled graphs stored as one Boolean adjacency matrix per label.

Triple files hold one ``src label dst`` edge per line; ``#`` starts a comment.
Vertices are numbered densely in first-seen order.  A ``#@vertex name`` line
declares a vertex ahead of its first edge, which lets :func:`save_graph`
preserve numbering and isolated vertices while staying a plain triple file.
"""
from __future__ import annotations

import os
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .boolmat import MatrixSet

INVERSE_SUFFIX = "_r"
VERTEX_PRAGMA = "#@vertex"
# '#' opens a comment only at the start of a field, so IRIs like ex:a#b survive
_COMMENT = re.compile(r"(^|\s)#.*$")


class GraphFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line
        self.path = path


def inverse_label(label: str) -> str:
    return label + INVERSE_SUFFIX


@dataclass
class LabeledGraph:
    """Boolean-matrix decomposition of a labeled digraph plus a vertex dictionary."""

    vertex_names: list[str] = field(default_factory=list)
    matrices: MatrixSet = field(default_factory=lambda: MatrixSet(0))

    def __post_init__(self):
        if self.matrices.dim != len(self.vertex_names):
            raise ValueError(
                f"{len(self.vertex_names)} vertex names for matrices of dim {self.matrices.dim}"
            )
        self._index = {name: i for i, name in enumerate(self.vertex_names)}
        if len(self._index) != len(self.vertex_names):
            raise ValueError("vertex names must be unique")

    @property
    def n(self) -> int:
        return len(self.vertex_names)

    @property
    def labels(self) -> list[str]:
        return self.matrices.labels()

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown vertex {name!r}") from None

    def name_of(self, i: int) -> str:
        return self.vertex_names[i]

    def edges(self) -> Iterator[tuple[int, str, int]]:
        """Edges as (src, label, dst) indices, sorted by label then coordinates."""
        for label, m in self.matrices.items():
            for i, j in m.coords():
                yield i, label, j

    def named_edges(self) -> Iterator[tuple[str, str, str]]:
        for i, label, j in self.edges():
            yield self.vertex_names[i], label, self.vertex_names[j]

    @property
    def edge_count(self) -> int:
        return self.matrices.nnz

    def has_edge(self, src: int, label: str, dst: int) -> bool:
        return self.matrices[label][src, dst]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return self.vertex_names == other.vertex_names and self.matrices == other.matrices

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[str, str, str]],
        vertices: Iterable[str] = (),
        add_inverse: bool = False,
    ) -> LabeledGraph:
        """Build from named edges; ``vertices`` fixes the order of leading names."""
        names: dict[str, int] = {}
        for v in vertices:
            names.setdefault(v, len(names))
        triples = []
        for u, label, v in edges:
            iu = names.setdefault(u, len(names))
            iv = names.setdefault(v, len(names))
            triples.append((iu, label, iv))
            if add_inverse:
                triples.append((iv, inverse_label(label), iu))
        ms = MatrixSet(len(names))
        for iu, label, iv in triples:
            ms.set(label, iu, iv)
        return cls(list(names), ms)

    def adjacency_labels(self) -> dict[tuple[int, int], set[str]]:
        """Multi-label adjacency: (i, j) -> set of labels on edges i -> j."""
        out: dict[tuple[int, int], set[str]] = {}
        for i, label, j in self.edges():
            out.setdefault((i, j), set()).add(label)
        return out


def parse_triples(lines: Iterable[str], add_inverse: bool = False, path: str | None = None):
    """Parse triple lines into ``(vertices, edges)``; raises on malformed input."""
    vertices: list[str] = []
    edges: list[tuple[str, str, str]] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if line.startswith(VERTEX_PRAGMA):
            parts = line.split()
            if len(parts) != 2 or parts[0] != VERTEX_PRAGMA:
                raise GraphFormatError(f"malformed vertex declaration {line!r}", lineno, path)
            vertices.append(parts[1])
            continue
        line = _COMMENT.sub("", line).strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise GraphFormatError(
                f"expected 'src label dst', got {len(parts)} field(s)", lineno, path
            )
        if add_inverse and parts[1].endswith(INVERSE_SUFFIX):
            raise GraphFormatError(
                f"label {parts[1]!r} collides with generated inverse labels", lineno, path
            )
        edges.append((parts[0], parts[1], parts[2]))
    return vertices, edges


def load_graph(source, add_inverse: bool = False) -> LabeledGraph:
    """Load a triple file.

    ``source`` is a path or an iterable of lines.  With ``add_inverse`` every
    edge ``(u, l, v)`` also yields ``(v, l_r, u)``.
    """
    if isinstance(source, (str, os.PathLike)):
        path = os.fspath(source)
        try:
            with open(path, encoding="utf-8") as fh:
                vertices, edges = parse_triples(fh, add_inverse, path)
        except OSError as e:
            raise OSError(f"cannot read graph {path}: {e.strerror}") from e
    else:
        vertices, edges = parse_triples(source, add_inverse)
    return LabeledGraph.from_edges(edges, vertices, add_inverse)


def dump_graph(g: LabeledGraph) -> str:
    """Canonical triple text: vertex declarations, then edges by source index."""
    out = [f"{VERTEX_PRAGMA} {name}" for name in g.vertex_names]
    for i, label, j in sorted(g.edges(), key=lambda e: (e[0], e[1], e[2])):
        out.append(f"{g.vertex_names[i]} {label} {g.vertex_names[j]}")
    return "".join(line + "\n" for line in out)


def save_graph(g: LabeledGraph, path) -> None:
    path = os.fspath(path)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dump_graph(g))
    except OSError as e:
        raise OSError(f"cannot write graph {path}: {e.strerror}") from e


@dataclass(frozen=True)
class GraphStats:
    n: int
    label_counts: list[tuple[str, int]]

    def top_labels(self, k: int | None = None) -> list[str]:
        labels = [l for l, _ in self.label_counts]
        return labels if k is None else labels[:k]

    def format(self) -> str:
        """``label<TAB>count`` lines, most frequent first."""
        return "".join(f"{l}\t{c}\n" for l, c in self.label_counts)


def graph_stats(g: LabeledGraph) -> GraphStats:
    counts = Counter({label: m.nnz for label, m in g.matrices.items()})
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return GraphStats(g.n, ranked)

