"""Context-free grammars with regular right-hand sides.

Source format, one rule per line::

    S -> a S b | a b      # comment
    V -> (S? a_r)* S? (a S?)*

A symbol that appears on the left of some rule is a nonterminal everywhere;
every other symbol is a terminal.  Repeated left-hand sides add alternatives.
"""
from __future__ import annotations

from dataclasses import dataclass

from .regex import (
    Alt,
    Concat,
    Optional,
    Plus,
    RegexAst,
    RegexSyntaxError,
    Star,
    Symbol,
    alt,
    parse_regex,
    symbols,
    tokenize,
)

ARROW = "->"


class GrammarSyntaxError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Grammar:
    nonterminals: tuple[str, ...]
    terminals: tuple[str, ...]
    start: str
    rules: dict[str, RegexAst]

    def __post_init__(self):
        if self.start not in self.nonterminals:
            raise ValueError(f"start symbol {self.start!r} is not a nonterminal")
        overlap = set(self.nonterminals) & set(self.terminals)
        if overlap:
            raise ValueError(f"symbols are both terminal and nonterminal: {sorted(overlap)}")
        known = set(self.nonterminals) | set(self.terminals)
        for lhs, body in self.rules.items():
            unknown = symbols(body) - known
            if unknown:
                raise ValueError(f"rule for {lhs!r} uses undeclared symbols {sorted(unknown)}")

    def with_start(self, start: str) -> Grammar:
        return Grammar(self.nonterminals, self.terminals, start, self.rules)


def _split_rule(line: str, lineno: int) -> tuple[str, int, str, int] | None:
    """Return (lhs, lhs_col, body, body_col) or None for blank/comment lines."""
    # strip the comment first so an arrow inside it is ignored
    stripped = []
    i = 0
    while i < len(line):
        c = line[i]
        if c == "\\" and i + 1 < len(line):
            stripped.append(line[i : i + 2])
            i += 2
            continue
        if c == "#":
            break
        stripped.append(c)
        i += 1
    text = "".join(stripped)
    if not text.strip():
        return None
    at = text.find(ARROW)
    if at < 0:
        col = len(text) - len(text.lstrip()) + 1
        raise GrammarSyntaxError(f"expected '{ARROW}'", lineno, col)
    head = text[:at]
    try:
        toks = list(tokenize(head, lineno, 1))
    except RegexSyntaxError as e:
        raise GrammarSyntaxError(e.message, e.line, e.column) from None
    if len(toks) != 1 or toks[0].kind != "sym":
        col = toks[1].column if len(toks) > 1 else (toks[0].column if toks else 1)
        raise GrammarSyntaxError("left-hand side must be a single symbol", lineno, col)
    return toks[0].text, toks[0].column, text[at + len(ARROW) :], at + len(ARROW) + 1


def parse_grammar(text: str, start: str | None = None) -> Grammar:
    """Parse grammar source.

    The start nonterminal is the first left-hand side unless ``start`` is given.
    Raises :class:`GrammarSyntaxError` with line and column on malformed input.
    """
    bodies: dict[str, list[RegexAst]] = {}
    order: list[str] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = _split_rule(line, lineno)
        if parts is None:
            continue
        lhs, _, body, body_col = parts
        try:
            ast = parse_regex(body, lineno, body_col)
        except RegexSyntaxError as e:
            raise GrammarSyntaxError(e.message, e.line, e.column) from None
        if lhs not in bodies:
            bodies[lhs] = []
            order.append(lhs)
        bodies[lhs].append(ast)
    if not order:
        raise GrammarSyntaxError("grammar has no rules", 1, 1)

    nonterminals = tuple(order)
    seen: dict[str, None] = {}
    for lhs in order:
        for body in bodies[lhs]:
            for s in _symbols_in_order(body):
                if s not in bodies:
                    seen.setdefault(s, None)
    rules = {lhs: alt(*bodies[lhs]) for lhs in order}
    chosen = order[0] if start is None else start
    if chosen not in bodies:
        raise GrammarSyntaxError(f"start symbol {chosen!r} has no rules", 1, 1)
    return Grammar(nonterminals, tuple(seen), chosen, rules)


def _symbols_in_order(node: RegexAst) -> list[str]:
    if isinstance(node, Symbol):
        return [node.name]
    if isinstance(node, (Alt, Concat)):
        return [s for c in node.children for s in _symbols_in_order(c)]
    if isinstance(node, (Star, Plus, Optional)):
        return _symbols_in_order(node.child)
    return []
