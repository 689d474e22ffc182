"""Acceptance gate: one test per criterion, each at its stated tolerance.

The terminal summary prints a PASS/FAIL line per criterion together with
the measured quantities each test records.
"""
import math
import warnings
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from bottleneck_discovery import adversary
from bottleneck_discovery.adaptive import (
    adaptive_tree_deterministic,
    adaptive_tree_randomized,
    grid_r_division,
    planar_adaptive,
    planar_r,
    tree_cover,
    uncovered_count,
)
from bottleneck_discovery.counting import EdgeTree, count_black_white_colorings, count_good_labellings, expected_reveals
from bottleneck_discovery.evaluation import exhaustive_permutation_expected_reveals, permutation_reveal_masks
from bottleneck_discovery.graph import certify_unique_paths
from bottleneck_discovery.greedy import greedy_non_adaptive
from bottleneck_discovery.instances import (
    gen_grid,
    gen_random_tree,
    gen_randomized_lb_instance,
    gen_torus_instance,
    gen_vertex_cover_reduction,
    is_vertex_cover,
    random_capacities,
    random_rooted_parents,
    small_graph_corpus,
)
from bottleneck_discovery.reveal import brute_force_opt, reveal_mask, revealed_edges

from oracles import colorings_by_enumeration, good_labellings_by_enumeration

pytestmark = pytest.mark.acceptance


def _or(masks, points):
    out = 0
    for p in points:
        out |= masks[p]
    return out.bit_count()


def _tree_corpus():
    rng = np.random.default_rng(2024)
    out = []
    for i in range(100):
        n = int(rng.integers(3, 41))
        g = gen_random_tree(n, 10_000 + i).graph
        out.append((g, random_capacities(g.m, 20_000 + i)))
    return out


def _tree_configs(n):
    for k in (1, 2):
        for alpha in sorted({1, 2, math.isqrt(n // k)}):
            if alpha >= 1 and alpha * k <= n:
                yield k, alpha


def test_criterion_01_exact_probability_oracle(record_property):
    corpus = small_graph_corpus(200, seed=0, max_edges=7)
    kinds = {"tree": 0, "cyclic": 0}
    checked = 0
    for g in corpus:
        kinds["tree" if g.is_tree() else "cyclic"] += 1
        masks = permutation_reveal_masks(g, cap=7)
        for size in range(0, min(3, g.n) + 1):
            for s in combinations(range(g.n), size):
                assert expected_reveals(g, s) == exhaustive_permutation_expected_reveals(g, s, masks=masks), (g, s)
                checked += 1
    assert len(corpus) >= 200 and kinds["cyclic"] > 0
    record_property("measured", f"{len(corpus)} graphs ({kinds['cyclic']} cyclic), {checked} sets, exact equality")


def test_criterion_02_counting_vs_enumeration(record_property):
    rng = np.random.default_rng(7)
    labelled = 0
    for _ in range(500):
        size = int(rng.integers(1, 13))
        parents = random_rooted_parents(size, rng)
        tree = EdgeTree.from_parents(parents)
        b = count_black_white_colorings(tree)
        assert list(b.coefficients) == colorings_by_enumeration(parents)
        assert b[0] == 0 and b[size] == 1
        if size <= 8:
            assert count_good_labellings(tree) == good_labellings_by_enumeration(parents)
            labelled += 1
    record_property("measured", f"500 trees, {labelled} labelling checks")


def test_criterion_03_greedy_guarantee(record_property):
    bound = Fraction(632120, 1000000)
    worst = None
    for g in small_graph_corpus(200, seed=0, max_edges=7):
        if g.n > 8:
            continue
        for k in range(1, min(3, g.n) + 1):
            best = max(expected_reveals(g, s) for s in combinations(range(g.n), k))
            got = greedy_non_adaptive(g, k).value
            assert got >= bound * best
            ratio = got / best if best else Fraction(1)
            worst = ratio if worst is None else min(worst, ratio)
    rng = np.random.default_rng(3)
    corpus = small_graph_corpus(100, seed=1, max_edges=7)
    for i in range(1000):
        g = corpus[i % len(corpus)]
        y = {int(v) for v in np.flatnonzero(rng.random(g.n) < 0.5)}
        x = {v for v in y if rng.random() < 0.5}
        w = int(rng.integers(g.n))
        fx, fy = expected_reveals(g, x), expected_reveals(g, y)
        fxw, fyw = expected_reveals(g, x | {w}), expected_reveals(g, y | {w})
        assert fxw >= fx
        assert fxw - fx >= fyw - fy
    record_property("measured", f"worst greedy/opt = {float(worst):.4f}; 1000 (X,Y,w) triples")


def test_criterion_04_deterministic_tree_tradeoff(record_property):
    worst = 0.0
    runs = 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for g, c in _tree_corpus():
            masks = [reveal_mask(g, s, c.ranks) for s in range(g.n)]
            for k, alpha in _tree_configs(g.n):
                _, opt = brute_force_opt(g, c, k)
                got = _or(masks, adaptive_tree_deterministic(g, k, alpha))
                assert got > 0
                value = Fraction(alpha * alpha * opt, got)
                assert value <= Fraction(4 * g.n, k)
                worst = max(worst, float(value) / (4 * g.n / k))
                runs += 1
    audits = 0
    for seed in range(8):
        g = gen_random_tree(int(np.random.default_rng(seed).integers(100, 201)), 500 + seed).graph
        for gamma in (1, 2, 5, 13, 40):
            members = tree_cover(g, 0, gamma).members
            for root in range(g.n):
                assert uncovered_count(g, members, root) <= gamma
                audits += 1
    record_property("measured", f"{runs} runs, max (a^2 b)/(4n/k) = {worst:.3f}; {audits} cover audits")


def test_criterion_05_randomized_tree_tradeoff(record_property):
    seeds = 1000
    worst = -math.inf
    configs = 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for g, c in _tree_corpus():
            masks = [reveal_mask(g, s, c.ranks) for s in range(g.n)]
            for k, alpha in _tree_configs(g.n):
                _, opt = brute_force_opt(g, c, k)
                counts = np.array(
                    [_or(masks, adaptive_tree_randomized(g, k, alpha, seed)) for seed in range(seeds)], dtype=float
                )
                mean = counts.mean()
                se_mean = counts.std(ddof=1) / math.sqrt(seeds)
                ab = alpha * opt / mean
                se_ab = ab * se_mean / mean  # delta method
                bound = 4 * math.sqrt(g.n / k)
                assert ab <= bound + 3 * se_ab, (g.n, k, alpha, ab, bound, se_ab)
                worst = max(worst, ab / bound)
                configs += 1
    record_property("measured", f"{configs} configs x {seeds} seeds, max ab/(4 sqrt(n/k)) = {worst:.3f}")


def test_criterion_06_planar_grid_tradeoff(record_property):
    c_max = 0.0
    boundary_ratio = 0.0
    runs = 0
    for w in range(2, 9):
        for h in range(2, 9):
            g = gen_grid(w, h).graph
            n = g.n
            for k in (1, 2):
                r = planar_r(n, k)
                division = grid_r_division(g, w, h, r)
                pts = planar_adaptive(g, division, k)
                assert len(pts) <= 4 * n / math.sqrt(r)
                boundary_ratio = max(boundary_ratio, len(pts) / (4 * n / math.sqrt(r)))
                for s in range(3):
                    caps = random_capacities(g.m, 1000 * w + 100 * h + 10 * k + s)
                    best, opt = brute_force_opt(g, caps, k)
                    alg = revealed_edges(g, pts, caps).revealed
                    optimal = revealed_edges(g, best, caps).revealed
                    assert len(optimal - alg) <= division.max_piece_size * k
                    measured = (len(pts) / k) * (opt / len(alg)) / (n / k) ** (2 / 3)
                    c_max = max(c_max, measured)
                    runs += 1
    assert c_max <= 16
    record_property("measured", f"{runs} runs, C = {c_max:.3f}, max |ALG|/(4n/sqrt r) = {boundary_ratio:.3f}")


def test_criterion_07_deterministic_adversary(record_property):
    worst = math.inf
    games = 0
    for name in sorted(adversary.STRATEGIES):
        for n, k in [(60, 2), (120, 3), (240, 4)]:
            for alpha in (1, 2, 3):
                t = adversary.play_adversary_game(n, k, alpha * k, adversary.make_strategy(name), name=name)
                assert t.fault is None
                assert adversary.replay_audit(t)
                value = t.alpha ** 2 * t.beta
                assert value >= Fraction(n, 24 * k)
                worst = min(worst, float(value) / (n / (24 * k)))
                games += 1
    record_property("measured", f"{games} games, min a^2 b/(n/24k) = {worst:.2f}")


def test_criterion_08_randomized_lower_bound_instance(record_property):
    n, k, seeds = 1024, 4, 500
    claim = k * (math.sqrt(n / k) - 1)
    single = []
    weakest = math.inf
    for seed in range(seeds):
        bundle = gen_randomized_lb_instance(n, k, seed)
        g, caps, meta = bundle.graph, bundle.capacities, bundle.metadata
        got = len(revealed_edges(g, meta["witness"], caps).revealed)
        assert got >= claim
        weakest = min(weakest, got)
        rng = np.random.default_rng([seed, 1])
        bad = [p for p in range(meta["paths"]) if p not in meta["good_paths"]]
        v = int(rng.choice(bad)) * meta["path_vertices"] + int(rng.integers(meta["path_vertices"]))
        single.append(len(revealed_edges(g, [v], caps).revealed))
    single = np.array(single, dtype=float)
    mean, se = single.mean(), single.std(ddof=1) / math.sqrt(seeds)
    bound = 2 * math.log(math.sqrt(n / k)) + 4
    assert mean <= bound + 3 * se
    record_property("measured", f"min witness = {weakest} (claim {claim:.0f}); bad-path mean = {mean:.3f} +- {se:.3f} "
                                f"(bound {bound:.3f})")


def test_criterion_09_torus_construction(record_property):
    worst = {}
    over = []
    for side in (4, 6, 8):
        for chosen in range(side * side):
            bundle = gen_torus_instance(side, chosen, seed=chosen)
            g, caps = bundle.graph, bundle.capacities
            assert len(revealed_edges(g, [chosen], caps).revealed) == g.n - 1
            for w in range(g.n):
                if w // side == chosen // side:
                    continue
                got = len(revealed_edges(g, [w], caps).revealed)
                worst[side] = max(worst.get(side, 0), got)
                if got > 2 * math.sqrt(g.n):
                    over.append((side, chosen, w, got))
    summary = ", ".join(f"side {s}: max {m} = {m / s:.2f} sqrt(n)" for s, m in sorted(worst.items()))
    record_property("measured", f"{summary}; {len(over)} off-row probes above 2 sqrt(n)")
    assert not over, f"{len(over)} off-row vantage points exceed 2 sqrt(n), e.g. {over[:3]}"


def test_criterion_10_vertex_cover_reduction(record_property):
    rng = np.random.default_rng(10)
    graphs = subsets = 0
    while graphs < 100:
        n = int(rng.integers(2, 8))
        pairs = list(combinations(range(n), 2))
        m = int(rng.integers(1, min(7, len(pairs)) + 1))
        edges = [pairs[int(i)] for i in rng.choice(len(pairs), size=m, replace=False)]
        g = gen_vertex_cover_reduction(edges, n=n).graph
        assert certify_unique_paths(g) == []
        masks = permutation_reveal_masks(g, cap=7)
        full = (1 << m) - 1
        for k in range(1, n + 1):
            for s in combinations(range(n), k):
                total = np.zeros_like(masks[0])
                for v in s:
                    total |= masks[v]
                assert bool(np.all(total == full)) == is_vertex_cover(edges, s), (edges, s)
                subsets += 1
        graphs += 1
    record_property("measured", f"{graphs} graphs, {subsets} subsets, every permutation enumerated")
