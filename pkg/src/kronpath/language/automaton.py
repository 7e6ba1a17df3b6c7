"""ε-free finite automata built from regex ASTs.

The position (Glushkov) construction yields an ε-free NFA with one state per
symbol occurrence plus a start state.  It is then determinized and minimized;
the minimal DFA is used whenever it is no larger than the trimmed NFA, so the
result never exceeds ``|positions| + 1`` states.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .regex import Alt, Concat, EmptySet, Epsilon, Optional, Plus, RegexAst, Star, Symbol


@dataclass(frozen=True)
class Automaton:
    """Single-start automaton with labeled transitions and no ε moves."""

    states: int
    start: int
    finals: frozenset[int]
    transitions: tuple[tuple[int, str, int], ...] = field(default=())

    def symbols(self) -> set[str]:
        return {a for _, a, _ in self.transitions}

    def delta(self) -> dict[tuple[int, str], set[int]]:
        out: dict[tuple[int, str], set[int]] = {}
        for s, a, t in self.transitions:
            out.setdefault((s, a), set()).add(t)
        return out

    def is_deterministic(self) -> bool:
        return all(len(ts) == 1 for ts in self.delta().values())

    def accepts(self, word: Sequence[str]) -> bool:
        d = self.delta()
        current = {self.start}
        for a in word:
            current = {t for s in current for t in d.get((s, a), ())}
            if not current:
                return False
        return bool(current & self.finals)


def _glushkov(node: RegexAst):
    labels: list[str] = []  # labels[p-1] is the symbol at position p
    follow: dict[int, set[int]] = {}

    def walk(n: RegexAst) -> tuple[bool, set[int], set[int]]:
        # (nullable, first, last)
        if isinstance(n, Symbol):
            labels.append(n.name)
            p = len(labels)
            follow[p] = set()
            return False, {p}, {p}
        if isinstance(n, Epsilon):
            return True, set(), set()
        if isinstance(n, EmptySet):
            return False, set(), set()
        if isinstance(n, Alt):
            parts = [walk(c) for c in n.children]
            return (
                any(p[0] for p in parts),
                set().union(*(p[1] for p in parts)),
                set().union(*(p[2] for p in parts)),
            )
        if isinstance(n, Concat):
            nullable, first, last = True, set(), set()
            for c in n.children:
                cn, cf, cl = walk(c)
                for x in last:
                    follow[x] |= cf
                if nullable:
                    first = first | cf
                last = (last | cl) if cn else cl
                nullable = nullable and cn
            return nullable, first, last
        if isinstance(n, (Star, Plus)):
            cn, cf, cl = walk(n.child)
            for x in cl:
                follow[x] |= cf
            return (True if isinstance(n, Star) else cn), cf, cl
        if isinstance(n, Optional):
            _, cf, cl = walk(n.child)
            return True, cf, cl
        raise TypeError(f"not a regex node: {n!r}")

    nullable, first, last = walk(node)
    trans = [(0, labels[p - 1], p) for p in first]
    for x, ys in follow.items():
        trans.extend((x, labels[y - 1], y) for y in ys)
    finals = set(last) | ({0} if nullable else set())
    return Automaton(len(labels) + 1, 0, frozenset(finals), tuple(sorted(trans)))


def _renumber(
    start: int, finals: Iterable[int], trans: Iterable[tuple[int, str, int]]
) -> Automaton:
    """Keep states that are reachable and co-reachable (the start always stays),
    numbered breadth-first with successors visited in symbol order."""
    trans = list(trans)
    finals = set(finals)
    back: dict[int, set[int]] = {}
    fwd: dict[int, list[tuple[str, int]]] = {}
    for s, a, t in trans:
        back.setdefault(t, set()).add(s)
        fwd.setdefault(s, []).append((a, t))
    live = set(finals)
    queue = deque(finals)
    while queue:
        t = queue.popleft()
        for s in back.get(t, ()):
            if s not in live:
                live.add(s)
                queue.append(s)

    order = {start: 0}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for a, t in sorted(fwd.get(s, ())):
            if t in live and t not in order:
                order[t] = len(order)
                queue.append(t)
    new_trans = sorted(
        {(order[s], a, order[t]) for s, a, t in trans if s in order and t in order}
    )
    new_finals = frozenset(order[f] for f in finals if f in order)
    return Automaton(len(order), 0, new_finals, tuple(new_trans))


def determinize(nfa: Automaton, limit: int | None = None) -> Automaton | None:
    """Subset construction; ``None`` once more than ``limit`` subsets appear."""
    d = nfa.delta()
    alphabet = sorted(nfa.symbols())
    start = frozenset([nfa.start])
    index = {start: 0}
    queue = deque([start])
    trans = []
    while queue:
        subset = queue.popleft()
        for a in alphabet:
            target = frozenset(t for s in subset for t in d.get((s, a), ()))
            if not target:
                continue
            if target not in index:
                if limit is not None and len(index) >= limit:
                    return None
                index[target] = len(index)
                queue.append(target)
            trans.append((index[subset], a, index[target]))
    finals = frozenset(i for sub, i in index.items() if sub & nfa.finals)
    return Automaton(len(index), 0, finals, tuple(trans))


def minimize(dfa: Automaton) -> Automaton:
    """Moore partition refinement of a partial DFA, then trim and renumber."""
    dfa = _renumber(dfa.start, dfa.finals, dfa.transitions)
    alphabet = sorted(dfa.symbols())
    step = {(s, a): t for s, a, t in dfa.transitions}
    block = [1 if q in dfa.finals else 0 for q in range(dfa.states)]
    while True:
        sig = {}
        new_block = []
        for q in range(dfa.states):
            key = (block[q],) + tuple(
                block[step[(q, a)]] if (q, a) in step else -1 for a in alphabet
            )
            new_block.append(sig.setdefault(key, len(sig)))
        if len(sig) == len(set(block)):
            break
        block = new_block
    trans = {(block[s], a, block[t]) for s, a, t in dfa.transitions}
    finals = {block[f] for f in dfa.finals}
    return _renumber(block[dfa.start], finals, trans)


def regex_to_box(node: RegexAst) -> Automaton:
    """ε-free automaton accepting exactly the language of ``node``.

    The start state is final iff the empty word is accepted.
    """
    nfa = _glushkov(node)
    trimmed = _renumber(nfa.start, nfa.finals, nfa.transitions)
    dfa = determinize(trimmed, limit=4 * trimmed.states + 4)
    if dfa is None:
        return trimmed
    small = minimize(dfa)
    return small if small.states <= trimmed.states else trimmed
