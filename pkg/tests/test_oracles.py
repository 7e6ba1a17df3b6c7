"""The reference implementations checked against each other."""
import random

import pytest

from kronpath import load_graph, parse_grammar, parse_regex
from kronpath.boolmat import BoolMatrix
from kronpath.queries import TEMPLATES, instantiate
from kronpath.synthetic import random_graph

from instances import cfg_instances
from oracles import (
    bfs_closure,
    cfl_matrix_oracle,
    cfl_reach_oracle,
    cyk,
    enumerate_walks,
    regex_matches,
    rpq_bfs_oracle,
    to_cnf,
    warshall,
)


def test_g1_fig1(two_cycle, g1):
    cnf = to_cnf(g1)
    assert cfl_reach_oracle(cnf, two_cycle)["S"] == {(0, 1), (1, 1)}
    assert cfl_matrix_oracle(cnf, two_cycle)["S"] == {(0, 1), (1, 1)}


def test_empty_graph(g1):
    assert all(not v for v in cfl_reach_oracle(to_cnf(g1), load_graph([])).values())


def test_epsilon_grammar_nullable_start():
    cnf = to_cnf(parse_grammar("S -> a S | ()"))
    assert "S" in cnf.nullable and cyk(cnf, "") and cyk(cnf, "aaa")


@pytest.mark.parametrize("inst", cfg_instances(60, seed=31), ids=lambda i: f"{i.name}-{i.seed}")
def test_worklist_agrees_with_matrix(inst):
    cnf = to_cnf(inst.grammar)
    a = cfl_reach_oracle(cnf, inst.graph)
    b = cfl_matrix_oracle(cnf, inst.graph)
    for nt in inst.grammar.nonterminals:
        assert a[nt] == b[nt]


@pytest.mark.parametrize("inst", cfg_instances(20, seed=8), ids=lambda i: f"{i.name}-{i.seed}")
def test_cfl_reach_agrees_with_walks_and_cyk(inst):
    # only sound for short witnesses, so compare the walk-derived subset
    cnf = to_cnf(inst.grammar)
    reach = cfl_reach_oracle(cnf, inst.graph)["S"]
    for pair, paths in enumerate_walks(inst.graph, 4).items():
        if any(cyk(cnf, [l for _, l, _ in p]) for p in paths):
            assert pair in reach


def test_rpq_oracle_against_walks():
    rng = random.Random(12)
    for name in ["Q1", "Q2", "Q5", "Q8", "Q12", "Q15"]:
        for _ in range(5):
            g = random_graph(rng.randint(1, 6), rng.randint(0, 12), ("p", "q", "r", "s"), seed=rng.random())
            (r,) = instantiate(TEMPLATES[name], ["p", "q", "r", "s"], 1)
            got = rpq_bfs_oracle(r, g)
            walks = enumerate_walks(g, 6)
            short = {pair for pair, ps in walks.items()
                     if any(regex_matches(r, [l for _, l, _ in p]) for p in ps)}
            assert short <= got


def test_rpq_oracle_empty_regex(two_cycle):
    assert rpq_bfs_oracle(parse_regex("∅"), two_cycle) == set()


def test_warshall_agrees_with_bfs():
    rng = random.Random(4)
    for _ in range(30):
        dim = rng.randint(1, 12)
        edges = {(rng.randrange(dim), rng.randrange(dim)) for _ in range(rng.randint(0, 30))}
        assert warshall(dim, edges) == bfs_closure(BoolMatrix.from_coords(dim, edges))


def test_regex_matches_basics():
    r = parse_regex("(a b)+ | c*")
    assert regex_matches(r, "abab") and regex_matches(r, "") and regex_matches(r, "ccc")
    assert not regex_matches(r, "aba") and not regex_matches(r, "abc")
