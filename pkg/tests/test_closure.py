import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kronpath.closure import DynClosure

from oracles import warshall


def test_length_two_path():
    c = DynClosure(8)
    assert c.insert_edge(0, 3) == [(0, 3)]
    assert sorted(c.insert_edge(3, 7)) == [(0, 7), (3, 7)]
    assert c.reachable(0, 7)


def test_repeat_insert_is_empty():
    c = DynClosure(8)
    c.insert_edge(0, 3)
    assert c.insert_edge(0, 3) == []


def test_irreflexive_by_default():
    c = DynClosure(4)
    assert not c.reachable(0, 0)
    c.insert_edge(0, 1)
    c.insert_edge(1, 0)
    assert c.reachable(0, 0) and c.reachable(1, 1)


def test_out_of_range():
    c = DynClosure(3)
    with pytest.raises(IndexError):
        c.insert_edge(0, 3)
    with pytest.raises(IndexError):
        c.reachable(-1, 0)


def check_against_warshall(dim, edges):
    c = DynClosure(dim)
    reported = []
    for i, j in edges:
        reported.extend(c.insert_edge(i, j))
    final = set(c.pairs())
    assert final == warshall(dim, edges)
    assert len(reported) == len(set(reported)) == c.nnz
    assert set(reported) == final
    for u in range(dim):
        for v in c.successors(u).indices():
            assert u in c.predecessors(v).indices()
    for v in range(dim):
        for u in c.predecessors(v).indices():
            assert c.reachable(u, v)
    return c


def test_random_200_insertions_dim_12():
    rng = random.Random(7)
    edges = [(rng.randrange(12), rng.randrange(12)) for _ in range(200)]
    check_against_warshall(12, edges)


edge_lists = st.integers(1, 10).flatmap(
    lambda d: st.tuples(
        st.just(d), st.lists(st.tuples(st.integers(0, d - 1), st.integers(0, d - 1)), max_size=30)
    )
)


@given(edge_lists)
def test_matches_warshall(case):
    check_against_warshall(*case)


@given(edge_lists, st.randoms())
def test_order_independent(case, rnd):
    dim, edges = case
    a = DynClosure(dim)
    a.insert_edges(edges)
    shuffled = list(edges)
    rnd.shuffle(shuffled)
    b = DynClosure(dim)
    b.insert_edges(shuffled)
    assert a.to_matrix() == b.to_matrix()


@given(edge_lists)
def test_from_matrix_roundtrip(case):
    dim, edges = case
    c = DynClosure(dim)
    c.insert_edges(edges)
    d = DynClosure.from_matrix(c.to_matrix())
    assert set(d.pairs()) == set(c.pairs())
