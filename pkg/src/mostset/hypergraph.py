"""Hypergraphs and their majority ("average") state."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Hashable, Iterable, Mapping, Sequence

from . import density_core as dn
from .errors import CertificateRequired, InvalidHypergraph, InvalidSpec
from .families import IndexedFamily, most_intersect_finite, sorted_elements

Vertex = Hashable


@dataclass(frozen=True)
class Hypergraph:
    vertices: tuple
    edges: tuple  # of frozensets; the list is a multiset

    def __post_init__(self):
        vertices = tuple(self.vertices)
        if len(set(vertices)) != len(vertices):
            raise InvalidHypergraph("duplicate vertex")
        edges = tuple(frozenset(e) for e in self.edges)
        if not edges:
            raise InvalidHypergraph("a hypergraph needs at least one hyperedge")
        known = set(vertices)
        for k, e in enumerate(edges):
            if not e:
                raise InvalidHypergraph(f"hyperedge {k} is empty")
            if not e <= known:
                raise InvalidHypergraph(f"hyperedge {k} uses unknown vertices {sorted_elements(e - known)}")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[Vertex]]) -> Hypergraph:
        """Vertices in order of first appearance."""
        edges = [list(e) for e in edges]
        seen = dict.fromkeys(v for e in edges for v in e)
        return cls(tuple(seen), tuple(edges))

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def size(self) -> int:
        return len(self.edges)

    def to_json(self) -> dict[str, Any]:
        return {
            "vertices": list(self.vertices),
            "edges": [[v for v in self.vertices if v in e] for e in self.edges],
        }


def order(h: Hypergraph) -> int:
    return h.order


def size(h: Hypergraph) -> int:
    return h.size


def average_state(h: Hypergraph) -> frozenset:
    """Vertices lying in strictly more than half of the hyperedges."""
    return most_intersect_finite(h.edges)


def is_balanced(h: Hypergraph) -> bool:
    return not average_state(h)


# -- infinite hypergraphs -------------------------------------------------------

@dataclass(frozen=True)
class InfiniteHypergraph:
    """Countably many hyperedges ``e_0, e_1, ...``; ``v in e_j`` iff ``edges(v, j)``."""

    edges: IndexedFamily

    def incident(self, v: Vertex, j: int) -> bool:
        return self.edges.membership(v, j)


def average_state_infinite(h: InfiniteHypergraph,
                           candidates: Sequence[Vertex]) -> dict[Vertex, Fraction]:
    """Candidates in most hyperedges, each mapped to the exact density of its edge-index set."""
    out = {}
    for v in candidates:
        cert = h.edges.certificate(v)
        if cert is None:
            raise CertificateRequired(f"no certificate for vertex {v!r}")
        if cert.is_infinite and dn.most(dn.NATURALS, cert):
            out[v] = dn.density(cert)
    return out


# -- input formats ----------------------------------------------------------

def from_json(data: Mapping[str, Any]) -> Hypergraph:
    try:
        edges = [list(e) for e in data["edges"]]
        vertices = data.get("vertices")
    except (KeyError, TypeError) as exc:
        raise InvalidSpec(f"malformed hypergraph: {exc!r}") from exc
    if vertices is None:
        return Hypergraph.from_edges(edges)
    return Hypergraph(tuple(vertices), tuple(edges))


_LINE = re.compile(r"(edge|vertices)\s*\{([^{}]*)\}\s*;?")


def from_text(text: str) -> Hypergraph:
    """Parse ``edge { v1 v4 }`` lines; an optional ``vertices { ... }`` line fixes V.

    ``#`` starts a comment.  Vertex names are whitespace- or comma-separated.
    """
    vertices = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.fullmatch(line)
        if not m:
            raise InvalidSpec(f"line {lineno}: expected 'edge {{ ... }}' or 'vertices {{ ... }}'")
        names = m.group(2).replace(",", " ").split()
        if m.group(1) == "vertices":
            if vertices is not None:
                raise InvalidSpec(f"line {lineno}: vertices declared twice")
            vertices = names
        else:
            edges.append(names)
    if vertices is None:
        return Hypergraph.from_edges(edges)
    return Hypergraph(tuple(vertices), tuple(edges))
