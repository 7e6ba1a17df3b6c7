"""Benchmark query corpus: RPQ templates and fixed same-generation grammars.

Template placeholders are the letters ``a``..``f``; :func:`instantiate` maps
them, in alphabetical order, onto a ranked list of graph labels.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .language.grammar import Grammar, parse_grammar
from .language.regex import RegexAst, Symbol, parse_regex, symbols

PLACEHOLDERS = "abcdef"


@dataclass(frozen=True)
class QueryTemplate:
    name: str
    source: str

    @property
    def pattern(self) -> RegexAst:
        return parse_regex(self.source)

    @property
    def placeholders(self) -> list[str]:
        return sorted(symbols(self.pattern))

    @property
    def arity(self) -> int:
        return len(self.placeholders)

    def instantiate(self, labels: list[str]) -> RegexAst:
        """Substitute ``labels[i]`` for the i-th placeholder."""
        ph = self.placeholders
        if len(labels) < len(ph):
            raise ValueError(f"{self.name} needs {len(ph)} labels, got {len(labels)}")
        mapping = dict(zip(ph, labels))
        return _substitute(self.pattern, mapping)


def _substitute(node: RegexAst, mapping: dict[str, str]) -> RegexAst:
    if isinstance(node, Symbol):
        return Symbol(mapping.get(node.name, node.name))
    if hasattr(node, "children"):
        return type(node)(tuple(_substitute(c, mapping) for c in node.children))
    if hasattr(node, "child"):
        return type(node)(_substitute(node.child, mapping))
    return node


_TABLE = """
Q1      a*
Q2      a b*
Q3      a b* c*
Q4^2    (a | b)*
Q4^3    (a | b | c)*
Q4^4    (a | b | c | d)*
Q4^5    (a | b | c | d | e)*
Q5      a b* c
Q6      a* b*
Q7      a b c*
Q8      a? b*
Q9^2    (a | b)+
Q9^3    (a | b | c)+
Q9^4    (a | b | c | d)+
Q9^5    (a | b | c | d | e)+
Q10^2   (a | b) c*
Q10^3   (a | b | c) d*
Q10^4   (a | b | c | d) e*
Q10^5   (a | b | c | d | e) f*
Q11^2   a b
Q11^3   a b c
Q11^4   a b c d
Q11^5   a b c d f
Q12     (a b)+ | (c d)+
Q13     (a (b c)*)+ | (d f)+
Q14     (a b (c d)*)+ (e | f)*
Q15     (a | b)+ (c | d)+
Q16     a b (c | d | e)
"""

TEMPLATES: dict[str, QueryTemplate] = {}
for _line in _TABLE.strip().splitlines():
    _name, _src = re.split(r"\s+", _line.strip(), maxsplit=1)
    TEMPLATES[_name] = QueryTemplate(_name, _src)


def instantiate(template: QueryTemplate, ranked_labels: list[str], count: int) -> list[RegexAst]:
    """``count`` queries; query ``q`` gives the i-th placeholder label ``(q + i) mod L``.

    Query 0 therefore maps ``a`` to the most frequent label, ``b`` to the
    second, and so on.
    """
    L = len(ranked_labels)
    if template.arity > L:
        raise ValueError(f"{template.name} needs {template.arity} labels, graph has {L}")
    return [
        template.instantiate([ranked_labels[(q + i) % L] for i in range(template.arity)])
        for q in range(count)
    ]


GRAMMARS: dict[str, str] = {
    "g1": (
        "S -> subClassOf_r S subClassOf | type_r S type"
        " | subClassOf_r subClassOf | type_r type\n"
    ),
    "g2": "S -> subClassOf_r S subClassOf | subClassOf\n",
    "geo": (
        "S -> broaderTransitive S broaderTransitive_r"
        " | broaderTransitive broaderTransitive_r\n"
    ),
    "ma": "S -> d_r V d\nV -> ((S?) a_r)* (S?) (a (S?))*\n",
    # the a^n b^n language used in the worked example
    "anbn": "S -> a S b | a b\n",
}


def builtin_grammar(name: str) -> Grammar:
    try:
        return parse_grammar(GRAMMARS[name])
    except KeyError:
        raise KeyError(f"unknown built-in grammar {name!r}; choose from {sorted(GRAMMARS)}") from None
