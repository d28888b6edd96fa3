"""Regular expressions over a declared alphabet.

Concrete syntax, loosest binding first::

    expr   := concat ('+' concat)*      union
    concat := star star*                juxtaposition
    star   := atom '*'*
    atom   := SYMBOL | EMPTY | EPS | '(' expr ')'

``EMPTY`` is written ``\\0`` or ``∅`` and ``EPS`` is ``\\e`` or ``ε``.  Every
other character must be a symbol of the alphabet.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from ..errors import RegexSyntaxError


@dataclass(frozen=True)
class EmptySet:
    def __str__(self):
        return "\\0"


@dataclass(frozen=True)
class Epsilon:
    def __str__(self):
        return "\\e"


@dataclass(frozen=True)
class Symbol:
    char: str

    def __str__(self):
        return self.char


@dataclass(frozen=True)
class Concat:
    left: Regex
    right: Regex

    def __str__(self):
        return f"({self.left}{self.right})"


@dataclass(frozen=True)
class Union_:
    left: Regex
    right: Regex

    def __str__(self):
        return f"({self.left}+{self.right})"


@dataclass(frozen=True)
class Star:
    inner: Regex

    def __str__(self):
        return f"({self.inner})*"


Regex = Union[EmptySet, Epsilon, Symbol, Concat, Union_, Star]

_META = set("+*()")
_ESCAPES = {"0": EmptySet(), "e": Epsilon()}
_LITERALS = {"∅": EmptySet(), "ε": Epsilon()}


def _tokenize(text: str, alphabet: frozenset[str]) -> list[tuple[str, object, int]]:
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c == "\\":
            if i + 1 >= len(text) or text[i + 1] not in _ESCAPES:
                raise RegexSyntaxError("bad escape sequence", i)
            tokens.append(("atom", _ESCAPES[text[i + 1]], i))
            i += 2
            continue
        if c in _META:
            tokens.append((c, None, i))
        elif c in _LITERALS:
            tokens.append(("atom", _LITERALS[c], i))
        elif c in alphabet:
            tokens.append(("atom", Symbol(c), i))
        else:
            raise RegexSyntaxError(f"symbol {c!r} not in alphabet", i)
        i += 1
    return tokens


class _Parser:
    def __init__(self, text: str, alphabet: frozenset[str]):
        self.tokens = _tokenize(text, alphabet)
        self.end = len(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def where(self) -> int:
        return self.tokens[self.pos][2] if self.pos < len(self.tokens) else self.end

    def expr(self) -> Regex:
        node = self.concat()
        while self.peek() == "+":
            self.pos += 1
            node = Union_(node, self.concat())
        return node

    def concat(self) -> Regex:
        node = self.star()
        while self.peek() in ("atom", "("):
            node = Concat(node, self.star())
        return node

    def star(self) -> Regex:
        node = self.atom()
        while self.peek() == "*":
            self.pos += 1
            node = Star(node)
        return node

    def atom(self) -> Regex:
        kind = self.peek()
        if kind == "atom":
            node = self.tokens[self.pos][1]
            self.pos += 1
            return node
        if kind == "(":
            self.pos += 1
            node = self.expr()
            if self.peek() != ")":
                raise RegexSyntaxError("expected ')'", self.where())
            self.pos += 1
            return node
        if kind is None:
            raise RegexSyntaxError("unexpected end of expression", self.where())
        raise RegexSyntaxError(f"unexpected {kind!r}", self.where())


def parse(text: str, alphabet: Iterable[str]) -> Regex:
    alphabet = frozenset(alphabet)
    clash = alphabet & (_META | set(_LITERALS) | {"\\"})
    if clash:
        raise RegexSyntaxError(f"alphabet uses reserved characters {sorted(clash)}", 0)
    p = _Parser(text, alphabet)
    node = p.expr()
    if p.pos != len(p.tokens):
        raise RegexSyntaxError(f"unexpected {p.peek()!r}", p.where())
    return node
