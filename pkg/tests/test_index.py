import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kronpath import build_index, grammar_to_rsm, load_graph, parse_grammar, parse_regex, regex_to_rsm
from kronpath.graph import LabeledGraph
from kronpath.index import (
    IndexFormatError,
    LabelCollisionError,
    UnknownNonterminalError,
    dump_index,
    load_index,
    parse_index,
    reachable_pairs,
    save_index,
)
from kronpath.synthetic import random_graph

from instances import cfg_instances
from oracles import bfs_closure, cfl_reach_oracle, reference_build, rpq_bfs_oracle, to_cnf, warshall

M3_FIRST = {(0, 3), (1, 2), (3, 7), (5, 7)}


def test_golden(golden):
    assert set(golden.graph_final["S"].coords()) == {(0, 1), (1, 1)}
    assert golden.iterations == 3
    assert set(golden.history[0].m3_delta.coords()) == M3_FIRST
    # iteration 2 adds ((1,0),(2,1)); iteration 3 adds ((1,1),(2,1)) but no graph edge
    assert set(golden.history[1].m3_delta.coords()) == {(2, 5)}
    assert golden.history[1].new_edges == [("S", 1, 1)]
    assert set(golden.history[2].m3_delta.coords()) == {(3, 5)}
    assert golden.history[2].new_edges == []
    assert reachable_pairs(golden, "S") == {("0", "1"), ("1", "1")}
    assert golden.n == 2 and golden.k == 4


def test_pairing_law(golden):
    assert golden.composite(3, 1) == 7
    assert golden.split(7) == (3, 1)


def test_empty_graph(g1_rsm):
    idx = build_index(g1_rsm, load_graph([]))
    assert idx.iterations == 0 and idx.m3.nnz == 0
    assert reachable_pairs(idx, "S") == set()


def test_unknown_nonterminal(golden):
    with pytest.raises(UnknownNonterminalError):
        reachable_pairs(golden, "T")


def test_label_collision(g1_rsm):
    with pytest.raises(LabelCollisionError):
        build_index(g1_rsm, load_graph(["0 S 1"]))


def test_empty_nonterminal_matrix():
    rsm = grammar_to_rsm(parse_grammar("S -> a | T\nT -> T b"))
    idx = build_index(rsm, load_graph(["0 a 1", "1 b 0"]))
    assert reachable_pairs(idx, "T") == set()
    assert reachable_pairs(idx, "S") == {("0", "1")}


def test_epsilon_diagonal():
    rsm = grammar_to_rsm(parse_grammar("S -> a S b | ()"))
    g = load_graph(["0 a 1", "1 b 2", "3 c 3"])
    idx = build_index(rsm, g)
    pairs = set(idx.pair_indices("S"))
    assert {(v, v) for v in range(g.n)} <= pairs
    assert (0, 2) in pairs


def test_rpq_ab_star_fig1(two_cycle):
    r = parse_regex("a b*")
    idx = build_index(regex_to_rsm(r), two_cycle)
    assert set(idx.pair_indices("S")) == rpq_bfs_oracle(r, two_cycle) == {(0, 1), (1, 0)}
    assert idx.productive_iterations == 1


@pytest.mark.parametrize("inst", cfg_instances(40, seed=11), ids=lambda i: f"{i.name}-{i.seed}")
def test_random_against_oracles(inst):
    rsm = grammar_to_rsm(inst.grammar)
    idx = build_index(rsm, inst.graph)
    oracle = cfl_reach_oracle(to_cnf(inst.grammar), inst.graph)
    for nt in inst.grammar.nonterminals:
        assert set(idx.pair_indices(nt)) == oracle[nt]
    gf, m3, _ = reference_build(rsm, inst.graph)
    assert gf == idx.graph_final and m3 == idx.m3
    assert set(idx.closure.pairs()) == warshall(idx.m3.dim, list(idx.m3.coords()))
    assert set(idx.closure.pairs()) == bfs_closure(idx.m3)
    assert idx.iterations <= len(rsm.nonterminals) * inst.graph.n ** 2 + 1
    for label, m in inst.graph.matrices.items():
        assert set(m.coords()) <= set(idx.graph_final[label].coords())


@pytest.mark.parametrize("inst", cfg_instances(20, seed=5), ids=lambda i: f"{i.name}-{i.seed}")
def test_fixpoint_independent_of_vertex_order(inst):
    rsm = grammar_to_rsm(inst.grammar)
    names = list(inst.graph.vertex_names)
    random.Random(inst.seed).shuffle(names)
    permuted = LabeledGraph.from_edges(inst.graph.named_edges(), vertices=names)
    a = build_index(rsm, inst.graph)
    b = build_index(rsm, permuted)
    for nt in inst.grammar.nonterminals:
        assert reachable_pairs(a, nt) == reachable_pairs(b, nt)


def test_monotone_history(golden):
    added = [h.new_edges for h in golden.history]
    flat = [e for batch in added for e in batch]
    assert len(flat) == len(set(flat))
    assert golden.graph_final["S"].nnz == len(flat)


# --- serialization ----------------------------------------------------------

def test_golden_roundtrip(golden, tmp_path):
    for with_closure in (False, True):
        path = tmp_path / f"idx{with_closure}.txt"
        save_index(golden, path, include_closure=with_closure)
        back = load_index(path)
        assert back.structurally_equal(golden)
        assert set(back.closure.pairs()) == set(golden.closure.pairs())


def test_empty_roundtrip(g1_rsm):
    idx = build_index(g1_rsm, load_graph([]))
    assert parse_index(dump_index(idx)).structurally_equal(idx)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**31), st.integers(1, 8), st.integers(0, 20))
def test_random_roundtrip(seed, n, m):
    g = random_graph(n, m, ("a", "b"), seed=seed)
    idx = build_index(grammar_to_rsm(parse_grammar("S -> a S b S | ()")), g)
    back = parse_index(dump_index(idx, include_closure=seed % 2 == 0))
    assert back.structurally_equal(idx)
    assert dump_index(back) == dump_index(idx)


def test_version_mismatch(golden):
    text = dump_index(golden).replace("kronpath-index 1", "kronpath-index 99", 1)
    with pytest.raises(IndexFormatError, match="version"):
        parse_index(text)


@pytest.mark.parametrize("cut", [1, 5, 12, -3])
def test_corrupt_sections(golden, cut):
    lines = dump_index(golden).splitlines()
    with pytest.raises(IndexFormatError):
        parse_index("\n".join(lines[:cut]))


def test_bad_magic():
    with pytest.raises(IndexFormatError):
        parse_index("not an index\n")
