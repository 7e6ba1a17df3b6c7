"""Seeded random graphs for tests, demos and scaling checks."""
from __future__ import annotations

import random
from typing import Sequence

from .graph import LabeledGraph


def random_graph(
    n_vertices: int,
    n_edges: int,
    labels: Sequence[str] = ("a", "b"),
    weights: Sequence[float] | None = None,
    seed: int | None = None,
    add_inverse: bool = False,
) -> LabeledGraph:
    """Graph with ``n_edges`` distinct random edges (fewer if the space is smaller).

    Vertex names are ``"0"``..``str(n_vertices - 1)`` in index order.
    """
    rng = random.Random(seed)
    capacity = n_vertices * n_vertices * len(labels)
    target = min(n_edges, capacity)
    edges: set[tuple[int, str, int]] = set()
    while len(edges) < target:
        u = rng.randrange(n_vertices)
        v = rng.randrange(n_vertices)
        label = rng.choices(labels, weights)[0] if weights else rng.choice(labels)
        edges.add((u, label, v))
    names = [str(i) for i in range(n_vertices)]
    ordered = sorted(edges, key=lambda e: (e[0], e[1], e[2]))
    return LabeledGraph.from_edges(
        ((names[u], l, names[v]) for u, l, v in ordered), names, add_inverse
    )


def skewed_graph(n_edges: int, seed: int = 0, add_inverse: bool = False) -> LabeledGraph:
    """Sparse five-label graph with one vertex per edge and Zipf-like label use.

    With an average out-degree of one, unions of a few labels stay below the
    percolation threshold, as in typical RDF-style data.
    """
    return random_graph(
        n_edges,
        n_edges,
        labels=("a", "b", "c", "d", "e"),
        weights=(0.30, 0.25, 0.20, 0.15, 0.10),
        seed=seed,
        add_inverse=add_inverse,
    )
