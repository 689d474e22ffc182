"""Instance generators: lower-bound families, torus, hardness reduction, test corpora."""
from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .graph import (
    TorusRowFirstRouting,
    WeightedGraph,
    build_graph,
    certify_unique_paths,
    read_graph,
    routing_from_description,
    write_graph,
)
from .reveal import CapacityAssignment, read_capacities, revealed_edges, write_capacities


class AuditError(AssertionError):
    """A generated instance failed its own consistency audit."""


@dataclass
class InstanceBundle:
    graph: WeightedGraph
    capacities: Optional[CapacityAssignment] = None
    metadata: dict = field(default_factory=dict)

    def audit(self) -> None:
        """Check the planted witness, if any, achieves its claimed count."""
        witness = self.metadata.get("witness")
        if witness is None or self.capacities is None:
            return
        got = len(revealed_edges(self.graph, witness, self.capacities).revealed)
        claimed = self.metadata.get("witness_reveals", 0)
        if got < claimed:
            raise AuditError(f"witness reveals {got} edges, claimed {claimed}")

    def save(self, directory) -> Path:
        out = Path(directory)
        out.mkdir(parents=True, exist_ok=True)
        write_graph(self.graph, out / "graph.txt")
        if self.capacities is not None:
            write_capacities(self.capacities, out / "capacities.txt")
        meta = dict(self.metadata)
        meta["routing"] = self.graph.routing.describe() if self.graph.routing else {"name": "perturbed"}
        (out / "meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
        return out

    @classmethod
    def load(cls, directory) -> "InstanceBundle":
        src = Path(directory)
        meta = json.loads((src / "meta.json").read_text()) if (src / "meta.json").exists() else {}
        g = read_graph(src / "graph.txt")
        routing = routing_from_description(meta.get("routing"))
        if routing is not None:
            g = g.with_routing(routing)
        caps = read_capacities(src / "capacities.txt", g.m) if (src / "capacities.txt").exists() else None
        return cls(g, caps, meta)


def _rng(seed):
    return np.random.default_rng(seed)


def gen_path_family(n: int, k: int) -> InstanceBundle:
    """``k`` disjoint unit-weight paths of ``n // k`` vertices each."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    length = n // k
    used = length * k
    edges = []
    for p in range(k):
        base = p * length
        edges += [(base + j, base + j + 1, 1) for j in range(length - 1)]
    g = build_graph(edges, n=used)
    meta = {"generator": "pathfamily", "params": {"n": n, "k": k}, "n_used": used, "path_vertices": length}
    return InstanceBundle(g, None, meta)


def gen_randomized_lb_instance(n: int, k: int, seed=None) -> InstanceBundle:
    """Paths with ``k`` planted good paths (decreasing capacities from the left)."""
    paths = max(k, round(math.sqrt(k * n)))
    length = max(2, round(math.sqrt(n / k)))
    rng = _rng(seed)
    good = sorted(int(i) for i in rng.choice(paths, size=k, replace=False))
    per = length - 1
    edges, ranks = [], []
    for p in range(paths):
        base = p * length
        edges += [(base + j, base + j + 1, 1) for j in range(per)]
        block = np.arange(p * per + 1, (p + 1) * per + 1)
        if p in good:
            ranks += [int(x) for x in block[::-1]]
        else:
            ranks += [int(x) for x in rng.permutation(block)]
    g = build_graph(edges, n=paths * length)
    witness = [p * length for p in good]
    meta = {
        "generator": "randlb",
        "params": {"n": n, "k": k},
        "seed": seed,
        "paths": paths,
        "path_vertices": length,
        "good_paths": good,
        "witness": witness,
        "witness_reveals": k * per,
    }
    bundle = InstanceBundle(g, CapacityAssignment(tuple(ranks)), meta)
    bundle.audit()
    return bundle


def torus_graph(side: int) -> WeightedGraph:
    edges = []
    for r in range(side):
        for c in range(side):
            v = r * side + c
            edges.append((v, r * side + (c + 1) % side, 1))
            edges.append((v, ((r + 1) % side) * side + c, 1))
    return build_graph(edges, n=side * side, routing=TorusRowFirstRouting(side))


def gen_torus_instance(side: int, chosen: int, seed=None) -> InstanceBundle:
    """Torus whose top ranks decrease layer by layer away from ``chosen``."""
    if side < 3:
        raise ValueError("torus side must be at least 3")
    g = torus_graph(side)
    if not 0 <= chosen < g.n:
        raise ValueError("chosen vertex out of range")
    tree = g.spt(chosen)
    depth = {chosen: 0}
    layered = []
    for v in tree.preorder():
        if v != chosen:
            depth[v] = depth[tree.parent[v]] + 1
            layered.append((depth[v], v, tree.parent_edge[v]))
    layered.sort()
    ranks = [0] * g.m
    top = g.m
    for _, _, e in layered:
        ranks[e] = top
        top -= 1
    rest = [e for e in range(g.m) if ranks[e] == 0]
    for e, r in zip(rest, _rng(seed).permutation(len(rest)) + 1):
        ranks[e] = int(r)
    meta = {
        "generator": "torus",
        "params": {"side": side, "chosen": chosen},
        "seed": seed,
        "witness": [chosen],
        "witness_reveals": g.n - 1,
    }
    bundle = InstanceBundle(g, CapacityAssignment(tuple(ranks)), meta)
    bundle.audit()
    return bundle


def gen_vertex_cover_reduction(vc_edges: Sequence[tuple[int, int]], n: Optional[int] = None) -> InstanceBundle:
    """Same graph with weight ``1 + 2**-(i+1)`` on edge ``i``."""
    edges = [(u, v, 1 + Fraction(1, 2 ** (i + 1))) for i, (u, v) in enumerate(vc_edges)]
    g = build_graph(edges, n=n)
    ties = certify_unique_paths(g)
    if ties:
        raise AuditError(f"reduction produced tied shortest paths: {ties[:5]}")
    return InstanceBundle(g, None, {"generator": "vcreduce", "params": {"edges": [list(e) for e in vc_edges]}})


def is_vertex_cover(edges: Sequence[tuple[int, int]], cover) -> bool:
    cover = set(cover)
    return all(u in cover or v in cover for u, v in edges)


def gen_random_tree(n: int, seed=None) -> InstanceBundle:
    """Uniform random labeled tree (Pruefer decoding), unit weights."""
    if n < 1:
        raise ValueError("n must be positive")
    edges = []
    if n == 2:
        edges = [(0, 1, 1)]
    elif n > 2:
        rng = _rng(seed)
        seq = [int(x) for x in rng.integers(0, n, size=n - 2)]
        degree = [1] * n
        for x in seq:
            degree[x] += 1
        leaves = [v for v in range(n) if degree[v] == 1]
        heapq.heapify(leaves)
        for x in seq:
            leaf = heapq.heappop(leaves)
            edges.append((leaf, x, 1))
            degree[x] -= 1
            if degree[x] == 1:
                heapq.heappush(leaves, x)
        u, v = heapq.heappop(leaves), heapq.heappop(leaves)
        edges.append((u, v, 1))
    g = build_graph(edges, n=n)
    return InstanceBundle(g, None, {"generator": "tree", "params": {"n": n}, "seed": seed})


def gen_grid(width: int, height: int) -> InstanceBundle:
    edges = []
    for y in range(height):
        for x in range(width):
            v = y * width + x
            if x + 1 < width:
                edges.append((v, v + 1, 1))
            if y + 1 < height:
                edges.append((v, v + width, 1))
    g = build_graph(edges, n=width * height)
    return InstanceBundle(g, None, {"generator": "grid", "params": {"width": width, "height": height}})


def random_capacities(m: int, seed=None) -> CapacityAssignment:
    return CapacityAssignment(tuple(int(x) for x in _rng(seed).permutation(m) + 1))


def _random_connected(n: int, m: int, rng) -> list[tuple[int, int]]:
    perm = [int(x) for x in rng.permutation(n)]
    pairs = set()
    for i in range(1, n):
        j = int(rng.integers(0, i))
        pairs.add((min(perm[i], perm[j]), max(perm[i], perm[j])))
    others = [p for p in combinations(range(n), 2) if p not in pairs]
    extra = rng.choice(len(others), size=m - (n - 1), replace=False) if m > n - 1 else []
    pairs.update(others[int(i)] for i in extra)
    return sorted(pairs)


def small_graph_corpus(count: int = 200, seed: int = 0, max_edges: int = 7, max_vertices: int = 8):
    """Connected graphs with at most ``max_edges`` edges and unique shortest paths.

    Cycles through paths, stars, random trees and random cyclic graphs with
    random integer weights (redrawn until no two shortest paths tie).
    """
    rng = _rng(seed)
    out = []
    kinds = ("path", "star", "tree", "cyclic")
    i = 0
    while len(out) < count:
        kind = kinds[i % len(kinds)]
        i += 1
        if kind == "path":
            n = int(rng.integers(2, min(max_edges, max_vertices - 1) + 2))
            g = build_graph([(j, j + 1, 1) for j in range(n - 1)], n=n)
        elif kind == "star":
            n = int(rng.integers(2, min(max_edges, max_vertices - 1) + 2))
            g = build_graph([(0, j, 1) for j in range(1, n)], n=n)
        elif kind == "tree":
            n = int(rng.integers(2, min(max_edges, max_vertices - 1) + 2))
            g = gen_random_tree(n, int(rng.integers(2**31))).graph
        else:
            n = int(rng.integers(3, min(max_edges, max_vertices) + 1))
            m = int(rng.integers(n, max_edges + 1)) if n <= max_edges else n - 1
            m = min(m, n * (n - 1) // 2)
            pairs = _random_connected(n, m, rng)
            for _ in range(50):
                weights = rng.integers(1, 20, size=len(pairs))
                g = build_graph([(u, v, int(w)) for (u, v), w in zip(pairs, weights)], n=n)
                if not certify_unique_paths(g):
                    break
            else:
                continue
        out.append(g)
    return out


def random_rooted_parents(size: int, rng) -> list[Optional[int]]:
    """Random rooted tree as a parent list with node 0 as the root."""
    return [None] + [int(rng.integers(0, i)) for i in range(1, size)]
