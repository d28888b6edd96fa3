import random
from fractions import Fraction

import pytest

from mostset import density_core as dn
from mostset import families as fm
from mostset import hypergraph as hg
from mostset.errors import CertificateRequired, InvalidHypergraph, InvalidSpec
from oracles import random_eps

EDGES = [["v1", "v4"], ["v4", "v5"], ["v1", "v2", "v3"], ["v2", "v3", "v6"], ["v3", "v4", "v6"]]


@pytest.fixture
def example_h():
    return hg.Hypergraph(tuple(f"v{i}" for i in range(1, 7)), tuple(EDGES))


def brute_average(h):
    return {v for v in h.vertices if sum(v in e for e in h.edges) * 2 > h.size}


def test_order_and_size(example_h):
    assert (example_h.order, example_h.size) == (6, 5)
    assert (hg.order(example_h), hg.size(example_h)) == (6, 5)
    one = hg.Hypergraph(("v",), ({"v"},))
    assert (one.order, one.size) == (1, 1)
    k3 = hg.Hypergraph.from_edges([{1, 2}, {2, 3}, {1, 3}])
    assert (k3.order, k3.size) == (3, 3)


def test_example_average_state(example_h):
    state = hg.average_state(example_h)
    assert state == {"v3", "v4"}
    assert state not in example_h.edges
    assert frozenset.intersection(*example_h.edges) <= state
    assert not hg.is_balanced(example_h)


def test_small_cases():
    assert hg.average_state(hg.Hypergraph.from_edges([{"a"}, {"a"}, {"b"}])) == {"a"}
    assert not hg.is_balanced(hg.Hypergraph.from_edges([{"a"}]))


def test_every_vertex_in_half_the_edges_is_balanced():
    h = hg.Hypergraph.from_edges([{"a"}, {"a"}, {"b"}, {"b"}])
    assert all(sum(v in e for e in h.edges) == 2 for v in h.vertices)
    assert hg.average_state(h) == set()
    assert hg.is_balanced(h)


def test_disjoint_edges_are_balanced():
    assert hg.is_balanced(hg.Hypergraph.from_edges([{1}, {2, 3}, {4}]))


def test_random_hypergraphs_match_counting():
    rng = random.Random(31)
    for _ in range(500):
        order = rng.randint(1, 12)
        verts = list(range(order))
        edges = [set(rng.sample(verts, rng.randint(1, order))) for _ in range(rng.randint(1, 15))]
        h = hg.Hypergraph(tuple(verts), tuple(edges))
        assert hg.average_state(h) == brute_average(h)
        assert hg.is_balanced(h) == (not brute_average(h))


def test_odd_duplication_preserves_average():
    rng = random.Random(37)
    for _ in range(100):
        verts = list(range(8))
        edges = [set(rng.sample(verts, rng.randint(1, 8))) for _ in range(rng.randint(1, 9))]
        h = hg.Hypergraph(tuple(verts), tuple(edges))
        for k in (3, 5):
            assert hg.average_state(hg.Hypergraph(h.vertices, h.edges * k)) == hg.average_state(h)


def test_invalid_inputs():
    with pytest.raises(InvalidHypergraph):
        hg.Hypergraph(("a",), ())
    with pytest.raises(InvalidHypergraph):
        hg.Hypergraph(("a",), ({"a"}, set()))
    with pytest.raises(InvalidHypergraph):
        hg.Hypergraph(("a",), ({"b"},))


def test_json_and_text_formats(example_h):
    assert hg.from_json(example_h.to_json()) == example_h
    assert hg.from_json({"edges": EDGES}).order == 6
    text = """
    # example
    vertices { v1 v2 v3 v4 v5 v6 }
    edge { v1 v4 }
    edge { v4, v5 }
    edge { v1 v2 v3 };
    edge { v2 v3 v6 }
    edge { v3 v4 v6 }
    """
    assert hg.from_text(text) == example_h
    assert hg.from_text("edge { a b }\nedge { b }").vertices == ("a", "b")
    with pytest.raises(InvalidSpec):
        hg.from_text("node { a }")
    with pytest.raises(InvalidHypergraph):
        hg.from_text("edge { }")


class TestInfinite:
    def make(self):
        table = {
            "even": dn.multiples(2),
            "cofinite": dn.cofinite(7),
            "two_thirds": dn.complement(dn.multiples(3)),
            "finite": dn.finite([0, 1, 2]),
        }
        return hg.InfiniteHypergraph(fm.periodic_table(table)), table

    def test_average_state(self):
        h, _ = self.make()
        got = hg.average_state_infinite(h, ["even", "cofinite", "two_thirds", "finite"])
        assert got == {"cofinite": Fraction(1), "two_thirds": Fraction(2, 3)}
        assert h.incident("even", 4) and not h.incident("even", 5)

    def test_missing_certificate(self):
        h = hg.InfiniteHypergraph(fm.IndexedFamily("opaque", lambda v, j: True, ("x",)))
        with pytest.raises(CertificateRequired):
            hg.average_state_infinite(h, ["x"])

    def test_estimated_agrees_away_from_half(self):
        rng = random.Random(41)
        table = {k: random_eps(rng, max_period=12, max_threshold=8) for k in range(40)}
        h = hg.InfiniteHypergraph(fm.periodic_table(table))
        exact = hg.average_state_infinite(h, list(table))
        est = fm.most_intersect_estimated(h.edges, 10**4, Fraction(1, 100))
        for v, s in table.items():
            if dn.density(s) != Fraction(1, 2):
                assert (v in exact) == (v in est.members)
