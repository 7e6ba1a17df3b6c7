from .automaton import Automaton, determinize, minimize, regex_to_box
from .grammar import Grammar, GrammarSyntaxError, parse_grammar
from .regex import (
    Alt,
    Concat,
    EmptySet,
    Epsilon,
    Optional,
    Plus,
    RegexAst,
    RegexSyntaxError,
    Star,
    Symbol,
    parse_regex,
)
from .rsm import Box, Rsm, grammar_to_rsm, regex_to_rsm, rsm_simulate

__all__ = [
    "Alt",
    "Automaton",
    "Box",
    "Concat",
    "EmptySet",
    "Epsilon",
    "Grammar",
    "GrammarSyntaxError",
    "Optional",
    "Plus",
    "RegexAst",
    "RegexSyntaxError",
    "Rsm",
    "Star",
    "Symbol",
    "determinize",
    "grammar_to_rsm",
    "minimize",
    "parse_grammar",
    "parse_regex",
    "regex_to_box",
    "regex_to_rsm",
    "rsm_simulate",
]
