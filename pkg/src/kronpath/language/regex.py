"""Regular expressions over whitespace-separated symbol tokens.

Concrete syntax: symbols are runs of characters other than whitespace and the
operators ``| ( ) * + ?``.  ``()`` is the empty word, ``∅`` the empty language,
``#`` starts a comment, and a backslash escapes an operator character inside
a symbol.  ``·`` may be written between factors and is ignored.
Precedence: postfix operators, then concatenation, then alternation.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

OPERATORS = "|()*+?"
_ESCAPABLE = OPERATORS + "#\\∅·"
EMPTY_SET_LITERAL = "∅"
EPSILON_LITERAL = "ε"
CONCAT_LITERAL = "·"


class RegexSyntaxError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class EmptySet:
    def __str__(self) -> str:
        return EMPTY_SET_LITERAL


@dataclass(frozen=True)
class Epsilon:
    def __str__(self) -> str:
        return "()"


@dataclass(frozen=True)
class Symbol:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("symbol name must be nonempty")

    def __str__(self) -> str:
        return "".join("\\" + c if c in _ESCAPABLE else c for c in self.name)


@dataclass(frozen=True)
class Alt:
    children: tuple

    def __str__(self) -> str:
        return "(" + " | ".join(map(str, self.children)) + ")"


@dataclass(frozen=True)
class Concat:
    children: tuple

    def __str__(self) -> str:
        return "(" + " ".join(map(str, self.children)) + ")"


@dataclass(frozen=True)
class Star:
    child: RegexAst

    def __str__(self) -> str:
        return f"{self.child}*"


@dataclass(frozen=True)
class Plus:
    child: RegexAst

    def __str__(self) -> str:
        return f"{self.child}+"


@dataclass(frozen=True)
class Optional:
    child: RegexAst

    def __str__(self) -> str:
        return f"{self.child}?"


RegexAst = Union[EmptySet, Epsilon, Symbol, Alt, Concat, Star, Plus, Optional]


def alt(*children: RegexAst) -> RegexAst:
    return children[0] if len(children) == 1 else Alt(tuple(children))


def concat(*children: RegexAst) -> RegexAst:
    if not children:
        return Epsilon()
    return children[0] if len(children) == 1 else Concat(tuple(children))


def symbols(node: RegexAst) -> set[str]:
    """All symbol names occurring in ``node``."""
    if isinstance(node, Symbol):
        return {node.name}
    if isinstance(node, (Alt, Concat)):
        return set().union(*(symbols(c) for c in node.children))
    if isinstance(node, (Star, Plus, Optional)):
        return symbols(node.child)
    return set()


def size(node: RegexAst) -> int:
    """Number of AST nodes."""
    if isinstance(node, (Alt, Concat)):
        return 1 + sum(size(c) for c in node.children)
    if isinstance(node, (Star, Plus, Optional)):
        return 1 + size(node.child)
    return 1


# --- tokenizer -------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # "sym", "op", "empty", "eps"
    text: str
    line: int
    column: int


def tokenize(text: str, line: int = 1, column: int = 1) -> Iterator[Token]:
    """Split one line of regex source; stops at an unescaped ``#``."""
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        col = column + i
        if c.isspace():
            i += 1
            continue
        if c == "#":
            return
        if c in OPERATORS:
            yield Token("op", c, line, col)
            i += 1
            continue
        if c == CONCAT_LITERAL:
            i += 1
            continue
        buf = []
        start = i
        while i < n:
            c = text[i]
            if c.isspace() or c in OPERATORS or c == "#" or c == CONCAT_LITERAL:
                break
            if c == "\\":
                if i + 1 >= n:
                    raise RegexSyntaxError("dangling escape", line, column + i)
                nxt = text[i + 1]
                if nxt not in _ESCAPABLE:
                    raise RegexSyntaxError(f"unknown escape '\\{nxt}'", line, column + i)
                buf.append(nxt)
                i += 2
                continue
            buf.append(c)
            i += 1
        word = "".join(buf)
        raw = text[start:i]
        if raw == EMPTY_SET_LITERAL:
            yield Token("empty", word, line, col)
        elif raw == EPSILON_LITERAL:
            yield Token("eps", word, line, col)
        else:
            yield Token("sym", word, line, col)


# --- parser ----------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[Token], line: int, end_column: int):
        self.tokens = tokens
        self.pos = 0
        self.line = line
        self.end_column = end_column

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def error(self, message: str, tok: Token | None = None) -> RegexSyntaxError:
        if tok is None:
            return RegexSyntaxError(message, self.line, self.end_column)
        return RegexSyntaxError(message, tok.line, tok.column)

    def parse(self) -> RegexAst:
        if not self.tokens:
            raise self.error("empty expression")
        node = self.alternation()
        tok = self.peek()
        if tok is not None:
            if tok.text == ")":
                raise self.error("unbalanced ')'", tok)
            raise self.error(f"unexpected {tok.text!r}", tok)
        return node

    def alternation(self) -> RegexAst:
        arms = [self.concatenation()]
        while (tok := self.peek()) is not None and tok.text == "|" and tok.kind == "op":
            self.pos += 1
            arms.append(self.concatenation())
        return alt(*arms)

    def concatenation(self) -> RegexAst:
        factors = []
        while (tok := self.peek()) is not None and not (
            tok.kind == "op" and tok.text in "|)"
        ):
            factors.append(self.postfix())
        if not factors:
            raise self.error("dangling '|' or empty alternative", self.peek())
        return concat(*factors)

    def postfix(self) -> RegexAst:
        node = self.atom()
        while (tok := self.peek()) is not None and tok.kind == "op" and tok.text in "*+?":
            self.pos += 1
            node = {"*": Star, "+": Plus, "?": Optional}[tok.text](node)
        return node

    def atom(self) -> RegexAst:
        tok = self.peek()
        assert tok is not None
        self.pos += 1
        if tok.kind == "sym":
            return Symbol(tok.text)
        if tok.kind == "empty":
            return EmptySet()
        if tok.kind == "eps":
            return Epsilon()
        if tok.text == "(":
            nxt = self.peek()
            if nxt is not None and nxt.kind == "op" and nxt.text == ")":
                self.pos += 1
                return Epsilon()
            node = self.alternation()
            close = self.peek()
            if close is None or close.text != ")":
                raise self.error("unbalanced '('", tok)
            self.pos += 1
            return node
        raise self.error(f"dangling operator {tok.text!r}", tok)


def parse_regex(text: str, line: int = 1, column: int = 1) -> RegexAst:
    """Parse regex source into an AST.

    >>> parse_regex("a b*")
    Concat(children=(Symbol(name='a'), Star(child=Symbol(name='b'))))
    """
    tokens: list[Token] = []
    lines = text.splitlines() or [""]
    for k, source in enumerate(lines):
        tokens.extend(tokenize(source, line + k, column if k == 0 else 1))
    end_column = (column if len(lines) == 1 else 1) + len(lines[-1])
    return _Parser(tokens, line + len(lines) - 1, end_column).parse()
