import math
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest

from bottleneck_discovery.counting import expected_reveals
from bottleneck_discovery.evaluation import (
    exhaustive_permutation_expected_reveals,
    measure_alpha_beta,
    monte_carlo_expected_reveals,
    permutation_reveal_masks,
    popcount,
)
from bottleneck_discovery.graph import build_graph
from bottleneck_discovery.instances import gen_random_tree, random_capacities, small_graph_corpus
from bottleneck_discovery.reveal import BudgetExceededError, CapacityAssignment, brute_force_opt, revealed_edges


def path_graph(n):
    return build_graph([(i, i + 1, 1) for i in range(n - 1)], n=n)


def test_exhaustive_examples():
    assert exhaustive_permutation_expected_reveals(path_graph(3), [0]) == Fraction(3, 2)
    g = path_graph(5)
    assert exhaustive_permutation_expected_reveals(g, range(5)) == g.m
    assert exhaustive_permutation_expected_reveals(path_graph(9), [0]) == sum(Fraction(1, i) for i in range(1, 9))


def test_exhaustive_cap():
    with pytest.raises(BudgetExceededError):
        exhaustive_permutation_expected_reveals(path_graph(10), [0])


def test_masks_agree_with_reveal():
    g = small_graph_corpus(10, seed=1)[7]
    masks = permutation_reveal_masks(g, cap=7)
    for i, perm in enumerate(permutations(range(1, g.m + 1))):
        if i % 37:
            continue
        for s in range(g.n):
            want = revealed_edges(g, [s], CapacityAssignment(perm)).revealed
            assert int(masks[s][i]) == sum(1 << e for e in want)


def test_popcount():
    assert list(popcount(np.array([0, 1, 3, 255]))) == [0, 1, 2, 8]


def test_counting_identity_on_corpus_sample():
    for g in small_graph_corpus(30, seed=12):
        masks = permutation_reveal_masks(g, cap=7)
        for s in ([0], [0, g.n - 1]):
            assert exhaustive_permutation_expected_reveals(g, s, masks=masks) == expected_reveals(g, s)


def test_monte_carlo():
    g = path_graph(6)
    exact = float(expected_reveals(g, [0]))
    mean, se = monte_carlo_expected_reveals(g, [0], 10_000, seed=1)
    assert abs(mean - exact) <= 3 * se
    assert monte_carlo_expected_reveals(g, [0], 50, seed=7) == monte_carlo_expected_reveals(g, [0], 50, seed=7)
    _, se1 = monte_carlo_expected_reveals(g, [0], 1)
    assert math.isnan(se1)
    with pytest.raises(ValueError):
        monte_carlo_expected_reveals(g, [0], 0)


def test_alpha_beta_modes():
    g = gen_random_tree(12, 3).graph
    c = random_capacities(g.m, 5)
    best, opt = brute_force_opt(g, c, 2)
    alpha, beta, got = measure_alpha_beta(g, c, best, 2)
    assert (alpha, beta, got) == (1, 1, opt)
    alpha, beta, _ = measure_alpha_beta(g, c, [0, 1, 2, 3], 2, "planted-witness", witness=best)
    assert alpha == 2 and beta == Fraction(opt, len(revealed_edges(g, [0, 1, 2, 3], c).revealed))
    assert measure_alpha_beta(g, c, [0], 1, "supplied", opt_count=40)[2] == 40
    with pytest.raises(ValueError):
        measure_alpha_beta(g, c, [0], 1, "supplied")
    with pytest.raises(ValueError):
        measure_alpha_beta(g, c, [0], 1, "oracle")


def test_beta_infinite_when_nothing_revealed():
    g = build_graph([(0, 1, 1)], n=3)
    _, beta, _ = measure_alpha_beta(g, CapacityAssignment((1,)), [2], 1)
    assert beta == math.inf
