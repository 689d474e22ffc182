"""Input validation helpers shared by the estimators and the CLI."""
from __future__ import annotations

from pathlib import Path

from .graph import WeightedGraph, build_graph, read_graph
from .reveal import CapacityAssignment


def check_graph(G) -> WeightedGraph:
    """Accept a graph, an edge list or a path to a graph file."""
    if isinstance(G, WeightedGraph):
        return G
    if isinstance(G, (str, Path)):
        return read_graph(G)
    return build_graph(G)


def check_capacities(G: WeightedGraph, capacities) -> CapacityAssignment:
    if isinstance(capacities, CapacityAssignment):
        c = capacities
    else:
        c = CapacityAssignment(tuple(capacities))
    if len(c) != G.m:
        raise ValueError(f"expected {G.m} capacity ranks, got {len(c)}")
    return c


def check_vantage_set(G: WeightedGraph, points) -> list[int]:
    pts = sorted({int(v) for v in points})
    bad = [v for v in pts if not 0 <= v < G.n]
    if bad:
        raise ValueError(f"vantage points out of range: {bad}")
    return pts


def check_k(G: WeightedGraph, k) -> int:
    k = int(k)
    if not 1 <= k <= G.n:
        raise ValueError(f"k={k} out of range 1..{G.n}")
    return k
