"""Reference oracles and measurements: exhaustive and sampled expectations, alpha/beta."""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Optional, Sequence

import numpy as np

from .graph import WeightedGraph
from .reveal import BudgetExceededError, CapacityAssignment, brute_force_opt, revealed_edges


def _all_rank_orders(m: int) -> np.ndarray:
    if m == 0:
        return np.zeros((1, 0), dtype=np.int16)
    return np.array(list(permutations(range(1, m + 1))), dtype=np.int16)


def permutation_reveal_masks(g: WeightedGraph, cap: int = 8, vertices: Optional[Iterable[int]] = None) -> dict:
    """For each vertex, the revealed-edge bitmask under every rank permutation.

    Row ``i`` of every array corresponds to the ``i``-th permutation of
    ``1..m`` in lexicographic order.
    """
    if g.m > cap:
        raise BudgetExceededError(f"m={g.m} exceeds cap {cap}: {math.factorial(g.m)} permutations", math.factorial(g.m))
    perms = _all_rank_orders(g.m)
    out = {}
    for s in range(g.n) if vertices is None else vertices:
        tree = g.spt(s)
        mask = np.zeros(len(perms), dtype=np.int64)
        stack = [(s, np.full(len(perms), g.m + 1, dtype=np.int16))]
        while stack:
            u, low = stack.pop()
            for v in tree.children[u]:
                e = tree.parent_edge[v]
                r = perms[:, e]
                hit = r < low
                mask |= hit.astype(np.int64) << e
                stack.append((v, np.minimum(low, r)))
        out[s] = mask
    return out


def popcount(a: np.ndarray) -> np.ndarray:
    a = a.astype(np.int64)
    out = np.zeros(a.shape, dtype=np.int64)
    while a.any():
        out += a & 1
        a = a >> 1
    return out


def exhaustive_permutation_expected_reveals(g: WeightedGraph, s_set: Iterable[int], cap: int = 8, masks=None) -> Fraction:
    """Average reveal count over all ``m!`` capacity orders, exactly."""
    s_set = sorted(set(s_set))
    if masks is None:
        masks = permutation_reveal_masks(g, cap, s_set)
    total = np.zeros_like(next(iter(masks.values()))) if s_set else np.zeros(1, dtype=np.int64)
    for s in s_set:
        total = total | masks[s]
    return Fraction(int(popcount(total).sum()), math.factorial(g.m))


def monte_carlo_expected_reveals(g: WeightedGraph, s_set: Iterable[int], trials: int, seed=0):
    """Sample mean and standard error of the reveal count.

    Trial ``i`` draws its permutation from the seed sequence ``(seed, i)``.
    The standard error is ``nan`` for a single trial.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    s_set = sorted(set(s_set))
    counts = np.empty(trials, dtype=np.float64)
    for i in range(trials):
        rng = np.random.default_rng([seed, i])
        c = CapacityAssignment(tuple(int(x) for x in rng.permutation(g.m) + 1))
        counts[i] = len(revealed_edges(g, s_set, c).revealed)
    mean = float(counts.mean())
    stderr = float(counts.std(ddof=1) / math.sqrt(trials)) if trials > 1 else math.nan
    return mean, stderr


def measure_alpha_beta(
    g: WeightedGraph,
    c: CapacityAssignment,
    alg_points: Sequence[int],
    k: int,
    opt_mode: str = "brute-force",
    opt_count: Optional[int] = None,
    witness: Optional[Sequence[int]] = None,
    budget: int = 2_000_000,
):
    """``alpha = |alg_points| / k`` and ``beta = OPT / revealed(alg_points)``.

    ``opt_mode`` picks where OPT comes from: ``"brute-force"`` enumerates,
    ``"planted-witness"`` counts what ``witness`` reveals, ``"supplied"``
    takes ``opt_count`` as given.
    """
    if opt_mode == "brute-force":
        _, opt_count = brute_force_opt(g, c, k, budget)
    elif opt_mode == "planted-witness":
        if witness is None:
            raise ValueError("planted-witness mode needs a witness set")
        opt_count = len(revealed_edges(g, witness, c).revealed)
    elif opt_mode == "supplied":
        if opt_count is None:
            raise ValueError("supplied mode needs opt_count")
    else:
        raise ValueError(f"unknown opt_mode {opt_mode!r}")
    alpha = Fraction(len(set(alg_points)), k)
    got = len(revealed_edges(g, alg_points, c).revealed)
    beta = math.inf if got == 0 else Fraction(opt_count, got)
    return alpha, beta, opt_count
