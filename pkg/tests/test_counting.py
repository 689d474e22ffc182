from fractions import Fraction

import numpy as np
import pytest

from bottleneck_discovery.counting import (
    EMPTY,
    INCIDENT,
    CountPolynomial,
    EdgeTree,
    build_edge_tree,
    count_black_white_colorings,
    count_good_labellings,
    essential_vantage_points,
    expected_reveals,
    reveal_probability,
)
from bottleneck_discovery.graph import build_graph
from bottleneck_discovery.instances import gen_torus_instance, random_rooted_parents, small_graph_corpus

from oracles import colorings_by_enumeration, expected_reveals_by_enumeration, good_labellings_by_enumeration


def path_graph(n):
    return build_graph([(i, i + 1, 1) for i in range(n - 1)], n=n)


def tree(parents):
    return EdgeTree.from_parents(parents)


@pytest.mark.parametrize(
    "parents, coeffs",
    [
        ([None], (0, 1)),
        ([None, 0], (0, 2, 1)),
        ([None, 0, 0], (0, 1, 3, 1)),
    ],
)
def test_colorings_examples(parents, coeffs):
    assert count_black_white_colorings(tree(parents)).coefficients == coeffs


@pytest.mark.parametrize("parents, good", [([None], 1), ([None, 0, 1], 2), ([None, 0, 0], 4)])
def test_good_labellings_examples(parents, good):
    assert count_good_labellings(tree(parents)) == good


def test_counting_matches_enumeration():
    rng = np.random.default_rng(1)
    for _ in range(150):
        size = int(rng.integers(1, 10))
        parents = random_rooted_parents(size, rng)
        b = count_black_white_colorings(tree(parents))
        assert list(b.coefficients) == colorings_by_enumeration(parents)
        if size <= 7:
            assert count_good_labellings(tree(parents)) == good_labellings_by_enumeration(parents)


def test_polynomial_arithmetic():
    p = CountPolynomial((1, 2))
    q = CountPolynomial((0, 1, 1))
    assert (p + q).coefficients == (1, 3, 1)
    assert (p * q).coefficients == (0, 1, 3, 2)
    assert p[5] == 0 and q.degree == 2


def test_edge_tree_shape():
    g = path_graph(3)
    t = build_edge_tree(g, [0], 1)
    assert t.root == 1 and t.parent == {1: None, 0: 1}
    assert t.leaves() == [0]
    assert build_edge_tree(g, [1], 1) is INCIDENT
    assert build_edge_tree(build_graph([(0, 1, 1), (2, 3, 1)]), [0], 1) is EMPTY


def test_edge_tree_branches():
    # star of paths: vantage points at two leaves, edge at the centre
    g = build_graph([(0, 1, 1), (1, 2, 1), (2, 3, 1), (4, 1, 1)])
    t = build_edge_tree(g, [0, 4], 2)
    assert t.root == 2
    assert t.parent[1] == 2 and t.parent[0] == 1 and t.parent[3] == 1
    assert sorted(map(tuple, t.root_to_leaf_paths())) == [(2, 1, 0), (2, 1, 3)]


def test_essential_points():
    g = path_graph(4)
    assert essential_vantage_points(g, [0, 1], 2) == {1}
    assert essential_vantage_points(build_graph([(0, 1, 1), (2, 3, 1)]), [0], 1) == frozenset()
    assert essential_vantage_points(g, [2], 2) == {2}


def test_probability_examples():
    assert reveal_probability(path_graph(3), [0], 1) == Fraction(1, 2)
    assert reveal_probability(path_graph(4), [0], 2) == Fraction(1, 3)
    assert reveal_probability(path_graph(4), [2], 2) == 1


def test_expected_reveals_examples():
    assert expected_reveals(path_graph(4), [0]) == Fraction(11, 6)
    assert expected_reveals(path_graph(3), [0]) == Fraction(3, 2)
    g = path_graph(5)
    assert expected_reveals(g, range(5)) == g.m


def test_non_geodesic_edge_has_probability_zero():
    g = build_graph([(0, 1, 1), (1, 2, 1), (0, 2, 5)])
    assert reveal_probability(g, [0], 2) == 0
    assert reveal_probability(g, [0, 2], 2) == 0
    assert expected_reveals(g, [0, 1, 2]) == 2


def test_matches_definition_by_enumeration():
    # independent of routing, reveal and the mask oracle
    for g in small_graph_corpus(40, seed=21, max_edges=5):
        for s_set in ([0], [g.n - 1], [0, g.n - 1]):
            want = expected_reveals_by_enumeration(g.edges, g.n, sorted(set(s_set)))
            assert expected_reveals(g, s_set) == want


def test_torus_routing_agrees_with_sampling():
    # row-first routes are suffix-closed, so the edge-tree argument still applies
    from bottleneck_discovery.evaluation import monte_carlo_expected_reveals

    g = gen_torus_instance(3, 0, seed=0).graph
    for s_set in ([0], [0, 4], [1, 2, 3]):
        mean, se = monte_carlo_expected_reveals(g, s_set, 5000, seed=2)
        assert abs(mean - float(expected_reveals(g, s_set))) <= 5 * se


def test_non_tree_probe_paths_are_rejected():
    # both probes cross (2, 3) but then take different detours to edge (6, 7)
    pairs = [(0, 2), (1, 2), (2, 3), (3, 4), (4, 6), (3, 5), (5, 6), (6, 7)]
    via_4 = build_graph([(u, v, 2 if (u, v) == (3, 5) else 1) for u, v in pairs])
    via_5 = build_graph([(u, v, 2 if (u, v) == (3, 4) else 1) for u, v in pairs])

    class SplitRouting:
        name = "split"

        def tree(self, g, s):
            return (via_4 if s == 0 else via_5).spt(s)

        def describe(self):
            return {"name": self.name}

    g = via_4.with_routing(SplitRouting())
    with pytest.raises(ValueError, match="do not form a tree"):
        build_edge_tree(g, [0, 1], 7)
