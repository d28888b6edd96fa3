"""Exact natural density on eventually periodic subsets of the naturals.

A set ``S`` is stored as a finite exceptional prefix followed by a periodic
tail: for ``n < threshold`` membership is ``prefix[n]``; for larger ``n`` it is
``n % period in residues``.  Every Boolean combination of such sets is again
of this shape, and the density limit always exists and equals
``len(residues) / period``.  Densities are :class:`fractions.Fraction` values
throughout so that the strict comparison in :func:`most` is never subject to
rounding.

Sets outside this class (primes, squares, ...) can only be sampled through
:func:`partial_density`, which reports a convergence flag instead of a limit.
"""
from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Union

from .errors import InvalidSpec, UniverseNotInfinite

Density = Fraction

DEFAULT_TOLERANCE = Fraction(1, 1000)
DEFAULT_WINDOW = 4


@dataclass(frozen=True)
class EventuallyPeriodicSet:
    threshold: int
    prefix: tuple[bool, ...]
    period: int
    residues: frozenset[int]

    def __post_init__(self):
        if self.period < 1:
            raise InvalidSpec(f"period must be >= 1, got {self.period}")
        if self.threshold < 0:
            raise InvalidSpec(f"threshold must be >= 0, got {self.threshold}")
        if len(self.prefix) != self.threshold:
            raise InvalidSpec(
                f"prefix has {len(self.prefix)} bits but threshold is {self.threshold}"
            )
        bad = [r for r in self.residues if not 0 <= r < self.period]
        if bad:
            raise InvalidSpec(f"residues {sorted(bad)} outside 0..{self.period - 1}")
        # normalise container types so structural equality is reliable
        object.__setattr__(self, "prefix", tuple(bool(b) for b in self.prefix))
        object.__setattr__(self, "residues", frozenset(self.residues))

    def __contains__(self, n: int) -> bool:
        return member(self, n)

    def __repr__(self):
        bits = "".join("1" if b else "0" for b in self.prefix)
        res = ",".join(str(r) for r in sorted(self.residues))
        return f"EPS(prefix={bits!r}, period={self.period}, residues={{{res}}})"

    @property
    def is_infinite(self) -> bool:
        return bool(self.residues)

    # operator sugar over the module-level functions
    def __or__(self, other: EventuallyPeriodicSet) -> EventuallyPeriodicSet:
        return union(self, other)

    def __and__(self, other: EventuallyPeriodicSet) -> EventuallyPeriodicSet:
        return intersect(self, other)

    def __sub__(self, other: EventuallyPeriodicSet) -> EventuallyPeriodicSet:
        return difference(self, other)

    def __invert__(self) -> EventuallyPeriodicSet:
        return complement(self)

    def to_json(self) -> dict[str, Any]:
        return {
            "threshold": self.threshold,
            "prefix": [int(b) for b in self.prefix],
            "period": self.period,
            "residues": sorted(self.residues),
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> EventuallyPeriodicSet:
        try:
            threshold = int(data.get("threshold", 0))
            prefix = tuple(_bit(b) for b in data.get("prefix", []))
            period = int(data["period"])
            residues = frozenset(int(r) for r in data["residues"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidSpec(f"malformed eventually periodic set: {exc}") from exc
        return canonicalize(cls(threshold, prefix, period, residues))


def _bit(value: Any) -> bool:
    if value in (0, 1, True, False):
        return bool(value)
    raise ValueError(f"prefix bit must be 0 or 1, got {value!r}")


def _tail_member(s: EventuallyPeriodicSet, n: int) -> bool:
    return n % s.period in s.residues


def member(s: EventuallyPeriodicSet, n: int) -> bool:
    if n < 0:
        return False
    if n < s.threshold:
        return s.prefix[n]
    return _tail_member(s, n)


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def canonicalize(s: EventuallyPeriodicSet) -> EventuallyPeriodicSet:
    """Return the unique representation of ``s`` with minimal period and threshold."""
    period = s.period
    for q in _divisors(s.period):
        if all((r in s.residues) == (r % q in s.residues) for r in range(s.period)):
            period = q
            break
    residues = frozenset(r for r in s.residues if r < period)

    # the tail pattern is purely periodic, so pulling the threshold down
    # never changes the minimal period found above
    threshold = s.threshold
    while threshold > 0 and s.prefix[threshold - 1] == ((threshold - 1) % period in residues):
        threshold -= 1
    return EventuallyPeriodicSet(threshold, s.prefix[:threshold], period, residues)


def is_canonical(s: EventuallyPeriodicSet) -> bool:
    return canonicalize(s) == s


# -- constructors -----------------------------------------------------------

def periodic(period: int, residues: Iterable[int]) -> EventuallyPeriodicSet:
    return canonicalize(
        EventuallyPeriodicSet(0, (), period, frozenset(r % period for r in residues))
    )


def multiples(k: int) -> EventuallyPeriodicSet:
    """``{0, k, 2k, ...}``; the point 0 is irrelevant to the density."""
    return periodic(k, [0])


def finite(elements: Iterable[int]) -> EventuallyPeriodicSet:
    elements = set(elements)
    if any(e < 0 for e in elements):
        raise InvalidSpec("naturals only")
    threshold = max(elements) + 1 if elements else 0
    prefix = tuple(n in elements for n in range(threshold))
    return canonicalize(EventuallyPeriodicSet(threshold, prefix, 1, frozenset()))


def cofinite(start: int) -> EventuallyPeriodicSet:
    """``{start, start + 1, ...}``"""
    return canonicalize(EventuallyPeriodicSet(start, (False,) * start, 1, frozenset({0})))


NATURALS = EventuallyPeriodicSet(0, (), 1, frozenset({0}))
EMPTY = EventuallyPeriodicSet(0, (), 1, frozenset())


# -- Boolean algebra ----------------------------------------------------------

def _combine(op: Callable[[bool, bool], bool], a: EventuallyPeriodicSet,
             b: EventuallyPeriodicSet) -> EventuallyPeriodicSet:
    period = math.lcm(a.period, b.period)
    threshold = max(a.threshold, b.threshold)
    prefix = tuple(op(member(a, n), member(b, n)) for n in range(threshold))
    residues = frozenset(
        r for r in range(period) if op(_tail_member(a, r), _tail_member(b, r))
    )
    return canonicalize(EventuallyPeriodicSet(threshold, prefix, period, residues))


def union(a: EventuallyPeriodicSet, b: EventuallyPeriodicSet) -> EventuallyPeriodicSet:
    return _combine(operator.or_, a, b)


def intersect(a: EventuallyPeriodicSet, b: EventuallyPeriodicSet) -> EventuallyPeriodicSet:
    return _combine(operator.and_, a, b)


def difference(a: EventuallyPeriodicSet, b: EventuallyPeriodicSet) -> EventuallyPeriodicSet:
    return _combine(lambda x, y: x and not y, a, b)


def symmetric_difference(a: EventuallyPeriodicSet,
                         b: EventuallyPeriodicSet) -> EventuallyPeriodicSet:
    return _combine(operator.xor, a, b)


def complement(a: EventuallyPeriodicSet) -> EventuallyPeriodicSet:
    return canonicalize(EventuallyPeriodicSet(
        a.threshold,
        tuple(not b for b in a.prefix),
        a.period,
        frozenset(range(a.period)) - a.residues,
    ))


def is_subset(a: EventuallyPeriodicSet, b: EventuallyPeriodicSet) -> bool:
    return difference(a, b) == EMPTY


def asymptotic(a: EventuallyPeriodicSet, b: EventuallyPeriodicSet) -> bool:
    """True iff the symmetric difference of ``a`` and ``b`` is finite."""
    return not symmetric_difference(a, b).is_infinite


# -- density and the Most quantifier -------------------------------------------

def density(s: EventuallyPeriodicSet) -> Fraction:
    return Fraction(len(s.residues), s.period)


def density_to_json(d: Fraction) -> dict[str, int]:
    return {"num": d.numerator, "den": d.denominator}


def most(universe: EventuallyPeriodicSet, a: EventuallyPeriodicSet) -> bool:
    """Most elements of ``universe`` are in ``a``: d(A n U) > d(U - A), strictly."""
    if not universe.is_infinite:
        raise UniverseNotInfinite("Most is only defined over an infinite universe")
    return density(intersect(a, universe)) > density(difference(universe, a))


def most_sim(a: EventuallyPeriodicSet, b: EventuallyPeriodicSet) -> bool:
    return most(NATURALS, a) == most(NATURALS, b)


# -- estimator mode ----------------------------------------------------------

@dataclass(frozen=True)
class OracleSet:
    """A subset of the naturals known only through a membership predicate."""

    contains: Callable[[int], bool]
    label: str = "oracle"

    def __contains__(self, n: int) -> bool:
        return bool(self.contains(n))


@dataclass(frozen=True)
class DensityEstimate:
    partial_value: Fraction
    sample_bound: int
    converged: bool
    oscillation: Fraction
    checkpoints: tuple[tuple[int, Fraction], ...] = ()

    def to_json(self) -> dict[str, Any]:
        return {
            "partial": density_to_json(self.partial_value),
            "n": self.sample_bound,
            "converged": self.converged,
            "oscillation": density_to_json(self.oscillation),
        }


MembershipSource = Union[EventuallyPeriodicSet, OracleSet, Callable[[int], bool]]


def _membership_bytes(source: MembershipSource, upto: int) -> bytes:
    """Byte ``n`` is 1 iff ``n`` is a member, for ``0 <= n <= upto``."""
    length = upto + 1
    if isinstance(source, EventuallyPeriodicSet):
        head = bytes(source.prefix[:length])
        if len(head) == length:
            return head
        start = source.threshold
        pattern = bytes((start + k) % source.period in source.residues
                        for k in range(source.period))
        reps = -(-(length - start) // source.period)
        return head + (pattern * reps)[: length - start]
    test = source.__contains__ if isinstance(source, OracleSet) else source
    return bytes(1 if test(n) else 0 for n in range(length))


def partial_density(source: MembershipSource, n: int,
                    tol: Fraction = DEFAULT_TOLERANCE,
                    window: int = DEFAULT_WINDOW) -> DensityEstimate:
    """Exact quotient ``|A n {1..n}| / n`` plus a heuristic convergence check.

    The quotient is also evaluated at ``2n, 4n, ...`` (``window`` checkpoints in
    all, starting at ``n``); the estimate counts as converged when the spread
    of those values is at most ``tol``.  A converged flag is evidence, not proof.
    """
    if n < 1:
        raise ValueError("sample bound must be >= 1")
    if window < 1:
        raise ValueError("window must be >= 1")
    tol = Fraction(tol)
    marks = [n << k for k in range(window)]
    bits = _membership_bytes(source, marks[-1])
    values = tuple((m, Fraction(bits.count(1, 1, m + 1), m)) for m in marks)
    spread = max(v for _, v in values) - min(v for _, v in values)
    return DensityEstimate(
        partial_value=values[0][1],
        sample_bound=n,
        converged=spread <= tol,
        oscillation=spread,
        checkpoints=values,
    )
