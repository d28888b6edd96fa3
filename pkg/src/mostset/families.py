"""Most-intersection of finite collections and of countably infinite families.

A finite collection is a list of sets; duplicates count towards the majority.
An infinite family ``A_0, A_1, ...`` is an :class:`IndexedFamily`: a membership
predicate ``(w, i) -> bool``, a declared pool of candidate elements, and
optionally a *certificate* per element, the exact index set
``{i : w in A_i}`` as an :class:`~mostset.density_core.EventuallyPeriodicSet`.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Mapping, Optional, Sequence, Union

import sympy

from . import density_core as dn
from .density_core import EventuallyPeriodicSet, OracleSet
from .errors import CertificateRequired, EmptyCollection, InvalidSpec

Element = Hashable
SetInterpretation = Union[EventuallyPeriodicSet, OracleSet]


def most_intersect_finite(sets: Sequence[Iterable[Element]]) -> frozenset:
    """Elements lying in strictly more than half of ``sets``."""
    sets = [frozenset(s) for s in sets]
    if not sets:
        raise EmptyCollection("most-intersection of an empty collection is undefined")
    counts = Counter(x for s in sets for x in s)
    return frozenset(x for x, c in counts.items() if 2 * c > len(sets))


def most_intersect_pair(a: Iterable[Element], b: Iterable[Element]) -> frozenset:
    return most_intersect_finite([a, b])


@dataclass(frozen=True)
class IndexedFamily:
    kind: str
    membership: Callable[[Element, int], bool]
    universe: tuple
    certificate: Callable[[Element], Optional[EventuallyPeriodicSet]] = lambda w: None
    params: Mapping[str, Any] = field(default_factory=dict)

    def __call__(self, w: Element, i: int) -> bool:
        return bool(self.membership(w, i))


def acceptance_prefix(fam: IndexedFamily, w: Element, n: int) -> list[int]:
    """The first ``n`` terms of the characteristic acceptance sequence of ``w``."""
    if n < 1:
        raise ValueError("prefix length must be >= 1")
    return [1 if fam.membership(w, i) else 0 for i in range(n)]


def set_interpretation(fam: IndexedFamily, w: Element) -> SetInterpretation:
    cert = fam.certificate(w)
    if cert is not None:
        return cert
    return OracleSet(lambda i: fam.membership(w, i), label=f"{fam.kind}[{w!r}]")


def _require_certificate(fam: IndexedFamily, w: Element) -> EventuallyPeriodicSet:
    cert = fam.certificate(w)
    if cert is None:
        raise CertificateRequired(f"no density certificate for {w!r} in {fam.kind} family")
    return cert


def indexed_verdicts(fam: IndexedFamily) -> dict[Element, tuple[bool, Fraction]]:
    """Per candidate: (member of the most-intersection, density of its index set)."""
    out = {}
    for w in fam.universe:
        s = _require_certificate(fam, w)
        never_dies = s.is_infinite
        out[w] = (never_dies and dn.most(dn.NATURALS, s), dn.density(s))
    return out


def most_intersect_indexed(fam: IndexedFamily) -> frozenset:
    """Exact most-intersection over the family's candidate universe.

    ``w`` is kept when its index set is infinite and Most(N, index set) holds.
    The first clause is implied by the second for certified sets but is still
    checked on its own.
    """
    return frozenset(w for w, (keep, _) in indexed_verdicts(fam).items() if keep)


@dataclass(frozen=True)
class EstimatedMostIntersection:
    members: frozenset
    estimates: dict
    exact: bool = False

    def to_json(self) -> dict[str, Any]:
        return {
            "exact": self.exact,
            "result": sorted_elements(self.members),
            "estimates": [
                {"element": w, **self.estimates[w].to_json()}
                for w in sorted_elements(self.estimates)
            ],
        }


def most_intersect_estimated(fam: IndexedFamily, n: int,
                             tol: Fraction = dn.DEFAULT_TOLERANCE) -> EstimatedMostIntersection:
    """Numeric most-intersection from membership queries alone; never exact."""
    estimates = {}
    for w in fam.universe:
        estimates[w] = dn.partial_density(lambda i, w=w: fam.membership(w, i), n, tol)
    keep = frozenset(
        w for w, est in estimates.items()
        if est.converged and est.partial_value > Fraction(1, 2)
    )
    return EstimatedMostIntersection(keep, estimates)


def union_map(fam: IndexedFamily, extra: Iterable[Element]) -> IndexedFamily:
    """The family ``B u A_i``; elements of ``B`` are certified as all of N."""
    extra = frozenset(extra)
    if not extra:
        return fam

    def membership(w, i):
        return w in extra or fam.membership(w, i)

    def certificate(w):
        return dn.NATURALS if w in extra else fam.certificate(w)

    universe = tuple(fam.universe) + tuple(
        sorted_elements(extra - frozenset(fam.universe))
    )
    return IndexedFamily(f"union({fam.kind})", membership, universe, certificate,
                         {"base": fam.params, "union": sorted_elements(extra)})


def sorted_elements(xs: Iterable[Element]) -> list:
    """Deterministic order for mixed int/str collections: ints first."""
    return sorted(xs, key=lambda x: (not isinstance(x, int), x if isinstance(x, int) else 0, str(x)))


# -- built-in families ------------------------------------------------------

def prime_prefix(universe: Iterable[int] = range(1, 101)) -> IndexedFamily:
    """``A_i`` = the first ``i`` primes (so ``A_0`` is empty)."""

    def rank(w):
        return int(sympy.primepi(w)) if isinstance(w, int) and sympy.isprime(w) else None

    def membership(w, i):
        k = rank(w)
        return k is not None and i >= k

    def certificate(w):
        k = rank(w)
        return dn.EMPTY if k is None else dn.cofinite(k)

    return IndexedFamily("prime_prefix", membership, tuple(universe), certificate)


def cumulative(base: Iterable[Element], additions: Mapping[int, Iterable[Element]],
               universe: Iterable[Element]) -> IndexedFamily:
    """``A_0 = base``, ``A_{n+1} = A_n u additions[n+1]`` for a finitely supported table."""
    base = frozenset(base)
    additions = {n: frozenset(ws) for n, ws in additions.items()}
    first_seen: dict = {w: 0 for w in base}
    for n in sorted(additions):
        if n < 1:
            raise InvalidSpec("cumulative additions are indexed from 1")
        for w in additions[n]:
            first_seen.setdefault(w, n)

    def membership(w, i):
        return w in base or any(w in ws for n, ws in additions.items() if n <= i)

    def certificate(w):
        return dn.cofinite(first_seen[w]) if w in first_seen else dn.EMPTY

    return IndexedFamily("cumulative", membership, tuple(universe), certificate,
                         {"base": sorted_elements(base)})


def periodic_table(table: Mapping[Element, EventuallyPeriodicSet],
                   universe: Optional[Iterable[Element]] = None) -> IndexedFamily:
    """Family given directly by each element's index set; unlisted elements are in no set."""
    table = dict(table)

    def certificate(w):
        return table.get(w, dn.EMPTY)

    def membership(w, i):
        return dn.member(certificate(w), i)

    universe = tuple(table) if universe is None else tuple(universe)
    return IndexedFamily("periodic_table", membership, universe, certificate)


def constant(members: Iterable[Element], universe: Optional[Iterable[Element]] = None) -> IndexedFamily:
    members = frozenset(members)

    def membership(w, i):
        return w in members

    def certificate(w):
        return dn.NATURALS if w in members else dn.EMPTY

    universe = tuple(sorted_elements(members)) if universe is None else tuple(universe)
    return IndexedFamily("constant", membership, universe, certificate)


def pairwise_disjoint(sets: Sequence[Iterable[Element]],
                      universe: Optional[Iterable[Element]] = None) -> IndexedFamily:
    """``A_i = sets[i]`` for the listed indices and empty afterwards."""
    sets = [frozenset(s) for s in sets]
    owner: dict = {}
    for i, s in enumerate(sets):
        for w in s:
            if w in owner:
                raise InvalidSpec(f"{w!r} appears in sets {owner[w]} and {i}")
            owner[w] = i

    def membership(w, i):
        return owner.get(w) == i

    def certificate(w):
        return dn.finite([owner[w]]) if w in owner else dn.EMPTY

    universe = tuple(sorted_elements(owner)) if universe is None else tuple(universe)
    return IndexedFamily("pairwise_disjoint", membership, universe, certificate)


def family_from_json(data: Mapping[str, Any]) -> IndexedFamily:
    """Build a family from ``{"kind": ..., "params": {...}, "universe": [...]}``."""
    try:
        kind = data["kind"]
        params = data.get("params", {}) or {}
        universe = _universe(data.get("universe"))
        if kind == "prime_prefix":
            return prime_prefix(universe if universe is not None else range(1, 101))
        if kind == "cumulative":
            additions = {int(n): ws for n, ws in params.get("additions", [])}
            return cumulative(params.get("base", []), additions, universe or [])
        if kind == "periodic_table":
            table = {w: EventuallyPeriodicSet.from_json(s) for w, s in params["table"]}
            return periodic_table(table, universe)
        if kind == "constant":
            return constant(params["set"], universe)
        if kind == "pairwise_disjoint":
            return pairwise_disjoint(params["sets"], universe)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidSpec(f"malformed family spec: {exc!r}") from exc
    raise InvalidSpec(f"unknown family kind {data.get('kind')!r}")


def _universe(raw: Any) -> Optional[list]:
    """``[...]`` literally, or ``{"range": [lo, hi]}`` for the integers lo..hi inclusive."""
    if raw is None:
        return None
    if isinstance(raw, Mapping):
        lo, hi = raw["range"]
        return list(range(int(lo), int(hi) + 1))
    return [_element(x) for x in raw]


def collection_from_json(data: Mapping[str, Any]) -> list[frozenset]:
    try:
        sets = data["sets"]
        return [frozenset(_element(x) for x in s) for s in sets]
    except (KeyError, TypeError) as exc:
        raise InvalidSpec(f"malformed collection spec: {exc!r}") from exc


def _element(x: Any) -> Element:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InvalidSpec(f"elements must be strings or integers, got {x!r}")
    return x
