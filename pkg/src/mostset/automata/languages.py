"""Density languages of infinite automata collections, and Myhill-Nerode evidence."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Optional, Sequence

from .. import density_core as dn
from ..density_core import EventuallyPeriodicSet
from ..errors import CertificateRequired
from .dfa import Dfa, from_words


@dataclass(frozen=True)
class LanguageFamily:
    """Languages ``L_0, L_1, ...`` given by membership and per-word index sets."""

    kind: str
    alphabet: tuple
    membership: Callable[[str, int], bool]
    certificate: Callable[[str], Optional[EventuallyPeriodicSet]]
    language: Optional[Callable[[int], Dfa]] = None


_ZEROS_ONES = re.compile(r"(0+)(1+)")


def cumulative_0n1n() -> LanguageFamily:
    """``L_0 = {01}`` and ``L_{n+1} = L_n u {0^(n+1) 1^(n+1)}``.

    Unrolled, ``L_i = {0^k 1^k : 1 <= k <= max(i, 1)}``: the step to ``L_1``
    adds ``01`` again, so ``0^k 1^k`` for ``k >= 2`` first appears in ``L_k``.
    """

    def block(w: str) -> Optional[int]:
        m = _ZEROS_ONES.fullmatch(w)
        if m and len(m.group(1)) == len(m.group(2)):
            return len(m.group(1))
        return None

    def membership(w, i):
        k = block(w)
        return k is not None and k <= max(i, 1)

    def certificate(w):
        k = block(w)
        if k is None:
            return dn.EMPTY
        return dn.cofinite(0 if k == 1 else k)

    def language(i):
        words = ["0" * k + "1" * k for k in range(1, max(i, 1) + 1)]
        return from_words(words, "01")

    return LanguageFamily("cumulative_0n1n", ("0", "1"), membership, certificate, language)


@dataclass(frozen=True)
class DensityVerdict:
    member: bool
    certificate: EventuallyPeriodicSet
    density: Fraction


def density_language_membership(fam: LanguageFamily, w: str) -> DensityVerdict:
    cert = fam.certificate(w)
    if cert is None:
        raise CertificateRequired(f"no index-set certificate for {w!r}")
    keep = cert.is_infinite and dn.most(dn.NATURALS, cert)
    return DensityVerdict(keep, cert, dn.density(cert))


@dataclass(frozen=True)
class NerodeEvidence:
    prefixes: tuple
    suffixes: tuple
    matrix: tuple            # matrix[i][j] = member(prefixes[i] + suffixes[j])
    witnesses: dict          # (i, j) -> a suffix separating prefixes i and j
    distinguishable_count: int
    representatives: tuple   # indices of one prefix per class, pairwise separated

    def separated(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.witnesses


def nerode_evidence(member: Callable[[str], bool], prefixes: Sequence[str],
                    suffixes: Sequence[str]) -> NerodeEvidence:
    """Group prefixes by their membership row over ``suffixes``.

    Prefixes with different rows are Nerode-inequivalent, each pair backed by
    an explicit suffix; the number of distinct rows lower-bounds the state
    count of any DFA for the language.
    """
    prefixes, suffixes = tuple(prefixes), tuple(suffixes)
    matrix = tuple(tuple(bool(member(u + s)) for s in suffixes) for u in prefixes)
    witnesses = {}
    for i, j in combinations(range(len(prefixes)), 2):
        for k, s in enumerate(suffixes):
            if matrix[i][k] != matrix[j][k]:
                witnesses[(i, j)] = s
                break
    first_with_row: dict = {}
    for i, row in enumerate(matrix):
        first_with_row.setdefault(row, i)
    return NerodeEvidence(prefixes, suffixes, matrix, witnesses,
                          len(first_with_row), tuple(first_with_row.values()))
