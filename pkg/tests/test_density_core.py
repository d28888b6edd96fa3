import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mostset import density_core as dn
from mostset.density_core import EventuallyPeriodicSet as EPS
from mostset.errors import InvalidSpec, UniverseNotInfinite
from oracles import count_up_to, eps_sets, raw_member

EVENS = dn.multiples(2)
ODDS = dn.complement(EVENS)


def in_blocks(n):
    # n in [4^k, 2 * 4^k) for some k
    return n >= 1 and (n.bit_length() - 1) % 2 == 0


class TestCanonicalize:
    def test_full_tail_collapses(self):
        got = dn.canonicalize(EPS(0, (), 2, frozenset({0, 1})))
        assert got == EPS(0, (), 1, frozenset({0})) == dn.NATURALS

    def test_consistent_prefix_is_absorbed(self):
        got = dn.canonicalize(EPS(2, (True, False), 2, frozenset({0})))
        assert got == EPS(0, (), 2, frozenset({0}))

    def test_period_reduced(self):
        raw = EPS(0, (), 4, frozenset({0, 2}))
        got = dn.canonicalize(raw)
        assert got == EPS(0, (), 2, frozenset({0}))
        assert all(raw_member(raw, n) == raw_member(got, n) for n in range(101))

    def test_zero_period_rejected(self):
        with pytest.raises(InvalidSpec):
            EPS(0, (), 0, frozenset())

    def test_prefix_length_must_match(self):
        with pytest.raises(InvalidSpec):
            EPS(2, (True,), 1, frozenset())

    @given(eps_sets(canonical=False))
    def test_idempotent_and_faithful(self, raw):
        c = dn.canonicalize(raw)
        assert dn.canonicalize(c) == c
        bound = raw.threshold + 4 * raw.period
        assert all(raw_member(raw, n) == dn.member(c, n) for n in range(bound))

    @given(eps_sets(max_period=12, max_threshold=8), eps_sets(max_period=12, max_threshold=8))
    def test_equal_iff_same_set(self, a, b):
        # both canonical; two eventually periodic sets agreeing on threshold + lcm terms agree everywhere
        bound = max(a.threshold, b.threshold) + math.lcm(a.period, b.period)
        same = all(dn.member(a, n) == dn.member(b, n) for n in range(bound))
        assert (a == b) == same


class TestMember:
    def test_multiples_of_three(self):
        m3 = dn.multiples(3)
        assert dn.member(m3, 9)
        assert not dn.member(m3, 10)

    def test_excluded_prefix_point(self):
        s = EPS(1, (False,), 1, frozenset({0}))
        assert not dn.member(s, 0)
        assert 1 in s


class TestDensity:
    @pytest.mark.parametrize("k", range(1, 11))
    def test_multiples_of_k(self, k):
        assert dn.density(dn.multiples(k)) == Fraction(1, k)

    def test_naturals_and_empty(self):
        assert dn.density(dn.NATURALS) == 1
        assert dn.density(dn.EMPTY) == 0

    def test_finite_sets_have_density_zero(self):
        assert dn.density(dn.finite([0, 3, 17, 400])) == 0

    def test_evens_or_odd_multiples_of_three(self):
        s = dn.union(EVENS, dn.periodic(6, [3]))
        assert s.period == 6 and s.residues == frozenset({0, 2, 3, 4})
        assert dn.density(s) == Fraction(2, 3)
        # brute-force partial density of the defining predicate at N = 10^6
        n = 10**6
        count = count_up_to(lambda k: k % 2 == 0 or k % 3 == 0, n)
        assert abs(Fraction(count, n) - Fraction(2, 3)) < Fraction(1, 10**5)

    def test_json_round_trip(self):
        s = dn.union(dn.finite([1, 4]), dn.periodic(5, [2, 3]))
        assert EPS.from_json(s.to_json()) == s
        assert dn.density_to_json(Fraction(2, 3)) == {"num": 2, "den": 3}

    def test_malformed_json(self):
        with pytest.raises(InvalidSpec):
            EPS.from_json({"threshold": 1, "prefix": [2], "period": 1, "residues": []})
        with pytest.raises(InvalidSpec):
            EPS.from_json({"residues": [0]})


class TestBooleanAlgebra:
    def test_evens_and_multiples_of_three(self):
        s = dn.intersect(EVENS, dn.multiples(3))
        assert s == dn.multiples(6)
        assert dn.density(s) == Fraction(1, 6)
        assert all(dn.member(s, n) == (n % 2 == 0 and n % 3 == 0) for n in range(10**4 + 1))

    def test_complement_of_empty(self):
        assert dn.complement(dn.EMPTY) == dn.NATURALS

    @given(eps_sets())
    def test_excluded_middle(self, a):
        assert a | ~a == dn.NATURALS
        assert a & ~a == dn.EMPTY

    @given(eps_sets(), eps_sets())
    def test_ops_agree_pointwise(self, a, b):
        bound = max(a.threshold, b.threshold) + 4 * math.lcm(a.period, b.period)
        u, i, d, c = a | b, a & b, a - b, ~a
        for n in range(bound):
            x, y = raw_member(a, n), raw_member(b, n)
            assert dn.member(u, n) == (x or y)
            assert dn.member(i, n) == (x and y)
            assert dn.member(d, n) == (x and not y)
            assert dn.member(c, n) == (not x)

    @given(eps_sets(), eps_sets())
    def test_outputs_canonical(self, a, b):
        for s in (a | b, a & b, a - b, ~a):
            assert dn.is_canonical(s)


class TestAsymptotic:
    def test_finite_perturbation(self):
        assert dn.asymptotic(EVENS, dn.union(EVENS, dn.finite([1, 3, 5])))

    def test_evens_vs_odds(self):
        assert not dn.asymptotic(EVENS, ODDS)

    @given(eps_sets(), st.frozensets(st.integers(0, 60)))
    def test_asymptotic_sets_share_density(self, a, points):
        b = dn.symmetric_difference(a, dn.finite(points))
        assert dn.asymptotic(a, b)
        assert dn.density(a) == dn.density(b)


class TestMost:
    def test_evens_is_a_tie(self):
        assert not dn.most(dn.NATURALS, EVENS)

    def test_non_multiples_of_three(self):
        assert dn.most(dn.NATURALS, dn.complement(dn.multiples(3)))

    def test_cofinite(self):
        assert dn.most(dn.NATURALS, dn.cofinite(1000))

    def test_relative_universe(self):
        # inside the evens, the multiples of 4 are exactly half; multiples of 2 but not 8 are most
        assert not dn.most(EVENS, dn.multiples(4))
        assert dn.most(EVENS, dn.complement(dn.multiples(8)))

    def test_finite_universe_rejected(self):
        with pytest.raises(UniverseNotInfinite):
            dn.most(dn.finite([1, 2, 3]), EVENS)

    def test_most_sim_examples(self):
        two_thirds, three_quarters = dn.periodic(3, [1, 2]), dn.periodic(4, [0, 1, 2])
        assert dn.most_sim(EVENS, EVENS)
        assert dn.most_sim(two_thirds, three_quarters)
        assert not dn.most_sim(two_thirds, dn.multiples(3))

    @given(eps_sets(), eps_sets(), eps_sets())
    def test_most_sim_is_an_equivalence(self, a, b, c):
        assert dn.most_sim(a, a)
        assert dn.most_sim(a, b) == dn.most_sim(b, a)
        if dn.most_sim(a, b) and dn.most_sim(b, c):
            assert dn.most_sim(a, c)


class TestPartialDensity:
    def test_evens(self):
        est = dn.partial_density(EVENS, 1000)
        assert est.partial_value == Fraction(500, 1000)
        assert est.sample_bound == 1000
        assert est.converged and est.oscillation == 0

    def test_callable_oracle_matches_set(self):
        s = dn.union(dn.finite([1, 2, 9]), dn.periodic(7, [3, 5]))
        a = dn.partial_density(s, 500)
        b = dn.partial_density(lambda n: dn.member(s, n), 500)
        assert a == b

    def test_squares(self):
        est = dn.partial_density(lambda n: math.isqrt(n) ** 2 == n, 10**4)
        assert est.partial_value == Fraction(math.isqrt(10**4), 10**4) == Fraction(100, 10**4)
        values = [v for _, v in est.checkpoints]
        assert values == sorted(values, reverse=True)

    def test_oscillating_blocks_do_not_converge(self):
        # partial densities at block ends approach 2/3, just before block starts 1/3
        highs = [Fraction(count_up_to(in_blocks, 2 ** (2 * k + 1) - 1), 2 ** (2 * k + 1) - 1) for k in (6, 7)]
        lows = [Fraction(count_up_to(in_blocks, 2 ** (2 * k) - 1), 2 ** (2 * k) - 1) for k in (7, 8)]
        assert all(abs(h - Fraction(2, 3)) < Fraction(1, 100) for h in highs)
        assert all(abs(lo - Fraction(1, 3)) < Fraction(1, 100) for lo in lows)
        est = dn.partial_density(in_blocks, 10**4)
        assert not est.converged
        assert est.oscillation > Fraction(1, 20)

    def test_estimate_json(self):
        est = dn.partial_density(EVENS, 10)
        assert est.to_json() == {"partial": {"num": 1, "den": 2}, "n": 10, "converged": True,
                                 "oscillation": {"num": 0, "den": 1}}

    def test_bad_bound(self):
        with pytest.raises(ValueError):
            dn.partial_density(EVENS, 0)

    @given(eps_sets(), st.sampled_from([1, 7, 100, 1000, 4096]))
    def test_tail_bound(self, s, n):
        est = dn.partial_density(s, n, window=1)
        assert abs(est.partial_value - dn.density(s)) <= Fraction(s.threshold + s.period, n)
