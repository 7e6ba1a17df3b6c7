"""Recursive state machines: one ε-free box per nonterminal, encoded as matrices."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..boolmat import MatrixSet
from .automaton import Automaton, regex_to_box
from .grammar import Grammar
from .regex import RegexAst, parse_regex, symbols


@dataclass(frozen=True)
class Box:
    """Placement of one component machine in the global state numbering.

    Member states are ``lo <= q < hi``.
    """

    start: int
    finals: frozenset[int]
    lo: int
    hi: int

    def __contains__(self, q: int) -> bool:
        return self.lo <= q < self.hi


@dataclass(frozen=True)
class Rsm:
    state_count: int
    boxes: dict[str, Box]
    transitions: MatrixSet
    start_nonterminal: str
    terminals: tuple[str, ...]

    @property
    def nonterminals(self) -> tuple[str, ...]:
        return tuple(self.boxes)

    def nonterminals_between(self, s: int, f: int) -> list[str]:
        """Boxes whose start state is ``s`` and which have ``f`` as a final state."""
        return [n for n, b in self.boxes.items() if b.start == s and f in b.finals]

    def start_final_map(self) -> dict[tuple[int, int], list[str]]:
        out: dict[tuple[int, int], list[str]] = {}
        for name, b in self.boxes.items():
            for f in sorted(b.finals):
                out.setdefault((b.start, f), []).append(name)
        return out

    def epsilon_nonterminals(self) -> list[str]:
        """Nonterminals whose box start state is also final."""
        return [n for n, b in self.boxes.items() if b.start in b.finals]

    def box_transitions(self, name: str) -> list[tuple[int, str, int]]:
        box = self.boxes[name]
        out = []
        for label, m in self.transitions.items():
            for i, j in m.coords():
                if i in box:
                    out.append((i, label, j))
        return sorted(out)


def _assemble(
    machines: list[tuple[str, Automaton]], start: str, terminals: Sequence[str]
) -> Rsm:
    total = sum(a.states for _, a in machines)
    transitions = MatrixSet(total)
    boxes: dict[str, Box] = {}
    offset = 0
    for name, a in machines:
        boxes[name] = Box(
            start=offset + a.start,
            finals=frozenset(offset + f for f in a.finals),
            lo=offset,
            hi=offset + a.states,
        )
        for s, label, t in a.transitions:
            transitions.set(label, offset + s, offset + t)
        offset += a.states
    return Rsm(total, boxes, transitions, start, tuple(terminals))


def grammar_to_rsm(g: Grammar) -> Rsm:
    """Build one box per nonterminal from its (alternation of) rule bodies.

    States are numbered globally, box by box in nonterminal order.
    """
    machines = [(n, regex_to_box(g.rules[n])) for n in g.nonterminals]
    return _assemble(machines, g.start, g.terminals)


def regex_to_rsm(regex: RegexAst | str, start: str = "S") -> Rsm:
    """Single-box machine for a regular query; every symbol is a terminal.

    ``start`` names the box and is primed until it no longer clashes with a
    symbol of the expression.
    """
    ast = parse_regex(regex) if isinstance(regex, str) else regex
    alphabet = symbols(ast)
    while start in alphabet:
        start += "'"
    return _assemble([(start, regex_to_box(ast))], start, sorted(alphabet))


def rsm_simulate(r: Rsm, word: Sequence[str]) -> bool:
    """Whether ``r`` accepts ``word`` (test oracle).

    Computes, as a least fixpoint, the spans ``word[i:j]`` derivable from each
    box: a run inside a box reads terminals one at a time and jumps over a
    nonterminal edge by any span already known for the called box.
    """
    nts = set(r.boxes)
    terms = set(r.terminals)
    for a in word:
        if a not in terms and a not in nts:
            raise ValueError(f"symbol {a!r} is not in the machine's alphabet")
    moves: dict[int, list[tuple[str, int]]] = {}
    for label, m in r.transitions.items():
        for s, t in m.coords():
            moves.setdefault(s, []).append((label, t))

    n = len(word)
    spans: dict[str, dict[int, set[int]]] = {name: {} for name in r.boxes}
    changed = True
    while changed:
        changed = False
        for name, box in r.boxes.items():
            for i in range(n + 1):
                seen = {(box.start, i)}
                stack = [(box.start, i)]
                ends = spans[name].setdefault(i, set())
                while stack:
                    q, p = stack.pop()
                    if q in box.finals and p not in ends:
                        ends.add(p)
                        changed = True
                    for label, t in moves.get(q, ()):
                        if label in nts:
                            nexts = spans[label].get(p, ())
                        elif p < n and word[p] == label:
                            nexts = (p + 1,)
                        else:
                            continue
                        for p2 in list(nexts):
                            if (t, p2) not in seen:
                                seen.add((t, p2))
                                stack.append((t, p2))
    return n in spans[r.start_nonterminal].get(0, ())
