import pytest

from kronpath.language import Concat, Plus, Star, Symbol, grammar_to_rsm, parse_regex
from kronpath.queries import GRAMMARS, TEMPLATES, builtin_grammar, instantiate


def test_template_count_and_names():
    assert len(TEMPLATES) == 28
    assert {"Q1", "Q4^2", "Q11^2", "Q11^5", "Q14", "Q16"} <= set(TEMPLATES)


def test_q14_pattern():
    t = TEMPLATES["Q14"]
    assert t.pattern == parse_regex("(a b (c d)*)+ (e | f)*")
    assert t.arity == 6


@pytest.mark.parametrize("name", sorted(TEMPLATES))
def test_arity_matches_symbols(name):
    t = TEMPLATES[name]
    assert t.arity == len(set(t.placeholders))
    assert set(t.placeholders) <= set("abcdef")


def test_instantiate_round_robin():
    q2 = TEMPLATES["Q2"]
    qs = instantiate(q2, ["x", "y", "z"], 4)
    assert qs[0] == Concat((Symbol("x"), Star(Symbol("y"))))
    assert qs[1] == Concat((Symbol("y"), Star(Symbol("z"))))
    assert qs[2] == Concat((Symbol("z"), Star(Symbol("x"))))
    assert qs[3] == qs[0]


def test_instantiate_too_few_labels():
    with pytest.raises(ValueError):
        instantiate(TEMPLATES["Q16"], ["x", "y"], 1)


def test_q9_plus():
    (q,) = instantiate(TEMPLATES["Q9^2"], ["p", "q"], 1)
    assert isinstance(q, Plus)


@pytest.mark.parametrize("name", sorted(GRAMMARS))
def test_builtin_grammars_build(name):
    g = builtin_grammar(name)
    assert g.start == "S"
    rsm = grammar_to_rsm(g)
    assert rsm.start_nonterminal == "S"


def test_builtin_inverses():
    assert set(builtin_grammar("g2").terminals) == {"subClassOf", "subClassOf_r"}
    assert set(builtin_grammar("ma").nonterminals) == {"S", "V"}


def test_unknown_builtin():
    with pytest.raises(KeyError):
        builtin_grammar("nope")
