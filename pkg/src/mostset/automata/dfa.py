"""Deterministic finite automata and the product constructions over them.

Every constructor in this module returns the minimal automaton with states
renamed ``0..n-1`` in breadth-first order from the start state (symbols taken
in sorted order), so two results are equal as values exactly when they
recognise the same language.
"""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Any, Callable, Hashable, Iterable, Mapping, Optional, Sequence

from ..errors import AlphabetMismatch, InvalidSpec, ProductTooLarge
from . import regex as rx

State = Hashable
DEFAULT_MAX_STATES = 10**6


@dataclass(frozen=True)
class Dfa:
    states: tuple
    alphabet: tuple
    delta: Mapping[tuple, State]
    start: State
    accept: frozenset

    def __post_init__(self):
        if self.start not in self.states:
            raise InvalidSpec(f"start state {self.start!r} is not a state")
        if not set(self.accept) <= set(self.states):
            raise InvalidSpec("accepting states must be states")
        for q in self.states:
            for a in self.alphabet:
                if self.delta.get((q, a), _MISSING) not in self.states:
                    raise InvalidSpec(f"transition from {q!r} on {a!r} missing or invalid")
        object.__setattr__(self, "accept", frozenset(self.accept))

    def __hash__(self):
        return hash((self.states, self.alphabet, self.start, self.accept,
                     tuple(sorted(self.delta.items(), key=repr))))

    def step(self, q: State, a: str) -> State:
        return self.delta[(q, a)]

    def run(self, word: Iterable[str]) -> State:
        q = self.start
        for a in word:
            if (q, a) not in self.delta:
                raise AlphabetMismatch(f"symbol {a!r} not in alphabet {list(self.alphabet)}")
            q = self.delta[(q, a)]
        return q

    def accepts(self, word: Iterable[str]) -> bool:
        return self.run(word) in self.accept

    def to_json(self) -> dict[str, Any]:
        return {
            "states": list(self.states),
            "alphabet": list(self.alphabet),
            "delta": {f"{q},{a}": self.delta[(q, a)] for q in self.states for a in self.alphabet},
            "start": self.start,
            "accept": [q for q in self.states if q in self.accept],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> Dfa:
        try:
            states = tuple(data["states"])
            alphabet = tuple(data["alphabet"])
            delta = {}
            for key, target in data["delta"].items():
                q, _, a = key.rpartition(",")
                delta[(_state_key(q, states), a)] = target
            return cls(states, alphabet, delta, data["start"], frozenset(data["accept"]))
        except (KeyError, TypeError, AttributeError) as exc:
            raise InvalidSpec(f"malformed DFA: {exc!r}") from exc


_MISSING = object()


def _state_key(text: str, states: Sequence[State]) -> State:
    # JSON keys are strings; recover integer state names
    for q in states:
        if str(q) == text:
            return q
    raise InvalidSpec(f"delta refers to unknown state {text!r}")


def dfa_accepts(d: Dfa, word: Iterable[str]) -> bool:
    return d.accepts(word)


# -- normal form --------------------------------------------------------------

def _reachable(d: Dfa) -> list:
    seen = {d.start: None}
    queue = deque([d.start])
    while queue:
        q = queue.popleft()
        for a in d.alphabet:
            r = d.delta[(q, a)]
            if r not in seen:
                seen[r] = None
                queue.append(r)
    return list(seen)


def _renamed(d: Dfa) -> Dfa:
    """Rename reachable states 0..n-1 in BFS order from the start."""
    order = _reachable(d)
    index = {q: i for i, q in enumerate(order)}
    delta = {(index[q], a): index[d.delta[(q, a)]] for q in order for a in d.alphabet}
    return Dfa(tuple(range(len(order))), d.alphabet, delta, 0,
               frozenset(index[q] for q in order if q in d.accept))


def minimize(d: Dfa) -> Dfa:
    """Hopcroft partition refinement on the reachable part, then canonical renaming."""
    d = _renamed(d)
    n = len(d.states)
    inverse = {(q, a): [] for q in d.states for a in d.alphabet}
    for (q, a), r in d.delta.items():
        inverse[(r, a)].append(q)

    accepting = frozenset(d.accept)
    rejecting = frozenset(d.states) - accepting
    partition = [b for b in (accepting, rejecting) if b]
    work = [min(partition, key=len)] if len(partition) == 2 else []
    while work:
        splitter = work.pop()
        for a in d.alphabet:
            pre = {q for r in splitter for q in inverse[(r, a)]}
            if not pre:
                continue
            refined = []
            for block in partition:
                inside = block & pre
                outside = block - pre
                if inside and outside:
                    refined += [inside, outside]
                    if block in work:
                        work.remove(block)
                        work += [inside, outside]
                    else:
                        work.append(min(inside, outside, key=len))
                else:
                    refined.append(block)
            partition = refined

    block_of = {}
    for i, block in enumerate(partition):
        for q in block:
            block_of[q] = i
    delta = {(block_of[q], a): block_of[d.delta[(q, a)]] for q in range(n) for a in d.alphabet}
    quotient = Dfa(tuple(range(len(partition))), d.alphabet, delta, block_of[d.start],
                   frozenset(block_of[q] for q in d.accept))
    return _renamed(quotient)


# -- regex pipeline -----------------------------------------------------------

class _Nfa:
    """Thompson-style NFA with epsilon moves; states are consecutive ints."""

    def __init__(self):
        self.eps: list[set[int]] = []
        self.moves: list[dict[str, set[int]]] = []

    def new(self) -> int:
        self.eps.append(set())
        self.moves.append({})
        return len(self.eps) - 1

    def build(self, node: rx.Regex) -> tuple[int, int]:
        s, f = self.new(), self.new()
        if isinstance(node, rx.EmptySet):
            pass
        elif isinstance(node, rx.Epsilon):
            self.eps[s].add(f)
        elif isinstance(node, rx.Symbol):
            self.moves[s].setdefault(node.char, set()).add(f)
        elif isinstance(node, rx.Concat):
            s1, f1 = self.build(node.left)
            s2, f2 = self.build(node.right)
            self.eps[s].add(s1)
            self.eps[f1].add(s2)
            self.eps[f2].add(f)
        elif isinstance(node, rx.Union_):
            for part in (node.left, node.right):
                si, fi = self.build(part)
                self.eps[s].add(si)
                self.eps[fi].add(f)
        elif isinstance(node, rx.Star):
            si, fi = self.build(node.inner)
            self.eps[s] |= {si, f}
            self.eps[fi] |= {si, f}
        else:
            raise TypeError(f"not a regex node: {node!r}")
        return s, f

    def closure(self, states: Iterable[int]) -> frozenset[int]:
        stack = list(states)
        seen = set(stack)
        while stack:
            for r in self.eps[stack.pop()]:
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        return frozenset(seen)


def regex_to_dfa(node: rx.Regex, alphabet: Iterable[str]) -> Dfa:
    alphabet = tuple(sorted(set(alphabet)))
    nfa = _Nfa()
    start, final = nfa.build(node)
    first = nfa.closure([start])
    seen = {first: 0}
    queue = deque([first])
    delta = {}
    while queue:
        cur = queue.popleft()
        for a in alphabet:
            nxt = nfa.closure(r for q in cur for r in nfa.moves[q].get(a, ()))
            if nxt not in seen:
                seen[nxt] = len(seen)
                queue.append(nxt)
            delta[(seen[cur], a)] = seen[nxt]
    accept = frozenset(i for subset, i in seen.items() if final in subset)
    return minimize(Dfa(tuple(range(len(seen))), alphabet, delta, 0, accept))


def from_regex(text: str, alphabet: Iterable[str]) -> Dfa:
    alphabet = tuple(alphabet)
    return regex_to_dfa(rx.parse(text, alphabet), alphabet)


def from_words(words: Iterable[Sequence[str]], alphabet: Iterable[str]) -> Dfa:
    """Minimal DFA of a finite language (prefix-tree automaton plus a sink)."""
    alphabet = tuple(sorted(set(alphabet)))
    nodes: dict[tuple, int] = {(): 0}
    accept = set()
    for w in words:
        path: tuple = ()
        for a in w:
            if a not in alphabet:
                raise AlphabetMismatch(f"symbol {a!r} not in alphabet {list(alphabet)}")
            path += (a,)
            nodes.setdefault(path, len(nodes))
        accept.add(nodes[path])
    sink = len(nodes)
    delta = {(sink, a): sink for a in alphabet}
    for path, q in nodes.items():
        for a in alphabet:
            delta[(q, a)] = nodes.get(path + (a,), sink)
    return minimize(Dfa(tuple(range(sink + 1)), alphabet, delta, 0, frozenset(accept)))


# -- products -----------------------------------------------------------------

def max_product_states() -> int:
    raw = os.environ.get("MOSTSET_MAX_STATES")
    return int(raw) if raw else DEFAULT_MAX_STATES


def _check_alphabets(dfas: Sequence[Dfa]) -> tuple:
    if not dfas:
        raise ValueError("need at least one automaton")
    alphabet = dfas[0].alphabet
    for d in dfas[1:]:
        if set(d.alphabet) != set(alphabet):
            raise AlphabetMismatch(
                f"alphabets differ: {sorted(alphabet)} vs {sorted(d.alphabet)}"
            )
    return tuple(sorted(alphabet))


def product(dfas: Sequence[Dfa], accepting: Callable[[tuple[bool, ...]], bool],
            max_states: Optional[int] = None, minimal: bool = True) -> Dfa:
    """Reachable synchronous product; a tuple state accepts per ``accepting``
    applied to the component acceptance flags."""
    alphabet = _check_alphabets(dfas)
    limit = max_product_states() if max_states is None else max_states
    start = tuple(d.start for d in dfas)
    seen = {start: 0}
    queue = deque([start])
    delta = {}
    while queue:
        cur = queue.popleft()
        for a in alphabet:
            nxt = tuple(d.delta[(q, a)] for d, q in zip(dfas, cur))
            if nxt not in seen:
                if len(seen) >= limit:
                    raise ProductTooLarge(f"product exceeds {limit} states")
                seen[nxt] = len(seen)
                queue.append(nxt)
            delta[(seen[cur], a)] = seen[nxt]
    accept = frozenset(
        i for t, i in seen.items()
        if accepting(tuple(q in d.accept for d, q in zip(dfas, t)))
    )
    raw = Dfa(tuple(range(len(seen))), alphabet, delta, 0, accept)
    return minimize(raw) if minimal else raw


def intersection_language(dfas: Sequence[Dfa], **kw) -> Dfa:
    return product(dfas, all, **kw)


def majority_product(dfas: Sequence[Dfa], **kw) -> Dfa:
    """Strings accepted by strictly more than half of ``dfas``."""
    n = len(dfas)
    return product(dfas, lambda flags: 2 * sum(flags) > n, **kw)


def union_language(dfas: Sequence[Dfa], **kw) -> Dfa:
    return product(dfas, any, **kw)


def complement(d: Dfa) -> Dfa:
    return minimize(Dfa(d.states, d.alphabet, d.delta, d.start,
                        frozenset(d.states) - d.accept))


def difference(a: Dfa, b: Dfa) -> Dfa:
    return product([a, b], lambda f: f[0] and not f[1])


def witness(d: Dfa) -> Optional[tuple[str, ...]]:
    """A shortest accepted word, or None when the language is empty."""
    paths = {d.start: ()}
    queue = deque([d.start])
    while queue:
        q = queue.popleft()
        if q in d.accept:
            return paths[q]
        for a in sorted(d.alphabet):
            r = d.delta[(q, a)]
            if r not in paths:
                paths[r] = paths[q] + (a,)
                queue.append(r)
    return None


def is_empty(d: Dfa) -> bool:
    return witness(d) is None


def is_subset(a: Dfa, b: Dfa) -> bool:
    return is_empty(difference(a, b))


def equivalent(a: Dfa, b: Dfa) -> bool:
    return is_empty(product([a, b], lambda f: f[0] != f[1]))


def words_up_to(alphabet: Iterable[str], max_len: int):
    """All words of length <= max_len in length-lexicographic order."""
    alphabet = sorted(alphabet)
    for n in range(max_len + 1):
        for w in cartesian(alphabet, repeat=n):
            yield "".join(w)
