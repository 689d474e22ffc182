"""Exact reveal probabilities under uniformly random capacity orders.

For a fixed edge ``e = (u, v)`` only the vantage points whose probe paths
cross ``e`` with no other vantage point in between matter.  The union of
their paths toward ``e`` is a tree; viewing its edges as nodes gives an
edge-tree rooted at ``e``, and ``e`` is revealed exactly when its capacity
is the minimum along some root-to-leaf path of that tree.  Counting such
orderings reduces to a polynomial recursion over black/white colorings.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Optional, Sequence, Union

from .graph import WeightedGraph


class TreeMarker(enum.Enum):
    INCIDENT = "incident"  # an endpoint of e is a vantage point
    EMPTY = "empty"  # no essential vantage point


INCIDENT = TreeMarker.INCIDENT
EMPTY = TreeMarker.EMPTY


@dataclass(frozen=True)
class EdgeTree:
    """Rooted tree whose nodes are edges of the graph.

    ``nodes[0]`` is the root.  ``parent`` maps every node to its parent node
    (``None`` for the root).
    """

    nodes: tuple[int, ...]
    parent: dict

    @classmethod
    def from_parents(cls, parents: Sequence[Optional[int]]) -> "EdgeTree":
        """Tree on nodes ``0..len(parents)-1``; ``parents[0]`` must be ``None``."""
        if not parents or parents[0] is not None:
            raise ValueError("node 0 must be the root")
        return cls(tuple(range(len(parents))), dict(enumerate(parents)))

    @property
    def root(self) -> int:
        return self.nodes[0]

    def __len__(self):
        return len(self.nodes)

    def children(self) -> dict:
        ch = {x: [] for x in self.nodes}
        for x in self.nodes:
            p = self.parent[x]
            if p is not None:
                ch[p].append(x)
        for lst in ch.values():
            lst.sort()
        return ch

    def leaves(self) -> list[int]:
        ch = self.children()
        return [x for x in self.nodes if not ch[x]]

    def leaf_flags(self) -> dict:
        ch = self.children()
        return {x: not ch[x] for x in self.nodes}

    def root_to_leaf_paths(self) -> list[list[int]]:
        paths = []
        for leaf in self.leaves():
            path = [leaf]
            while self.parent[path[-1]] is not None:
                path.append(self.parent[path[-1]])
            path.reverse()
            paths.append(path)
        return paths


@dataclass(frozen=True)
class CountPolynomial:
    """Nonnegative integer polynomial; ``coefficients[t]`` multiplies ``x**t``."""

    coefficients: tuple[int, ...]

    def __getitem__(self, t: int) -> int:
        return self.coefficients[t] if 0 <= t < len(self.coefficients) else 0

    def __len__(self):
        return len(self.coefficients)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __add__(self, other: "CountPolynomial") -> "CountPolynomial":
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return CountPolynomial(tuple(out))

    def __mul__(self, other: "CountPolynomial") -> "CountPolynomial":
        a, b = self.coefficients, other.coefficients
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return CountPolynomial(tuple(out))


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    return math.factorial(n)


@lru_cache(maxsize=None)
def _black_root_poly(size: int) -> CountPolynomial:
    # x * (1 + x)**(size - 1): root black, the rest arbitrary
    return CountPolynomial((0,) + tuple(comb(size - 1, t) for t in range(size)))


def count_black_white_colorings(tree: EdgeTree) -> CountPolynomial:
    """Colorings with ``t`` black nodes and no all-white root-to-leaf path.

    Runs one polynomial product per node, bottom-up.
    """
    if not len(tree):
        raise ValueError("tree must be nonempty")
    ch = tree.children()
    order, stack = [], [tree.root]
    while stack:
        x = stack.pop()
        order.append(x)
        stack.extend(ch[x])
    poly, size = {}, {}
    for x in reversed(order):
        kids = ch[x]
        size[x] = 1 + sum(size[y] for y in kids)
        if not kids:
            poly[x] = CountPolynomial((0, 1))
            continue
        white = poly[kids[0]]
        for y in kids[1:]:
            white = white * poly[y]
        poly[x] = white + _black_root_poly(size[x])
        for y in kids:
            del poly[y]
    return poly[tree.root]


def count_good_labellings(tree: EdgeTree) -> int:
    """Bijective labellings where the root is the minimum of some root-to-leaf path."""
    b = count_black_white_colorings(tree)
    n = len(tree)
    return sum((comb(n, t) - b[t]) * factorial(n - 1 - t) * factorial(t) for t in range(n))


def _is_geodesic(g: WeightedGraph, e: int) -> bool:
    # an edge that is not the route between its own endpoints lies on no route at all
    u, v = g.endpoints(e)
    return g.spt(u).parent_edge[v] == e


def _sides(g: WeightedGraph, s: int, e: int):
    """``(near, far)`` if the probe path from ``s`` crosses ``e`` (near side first)."""
    u, v = g.endpoints(e)
    tree = g.spt(s)
    if tree.parent_edge[u] == e:
        return v, u
    if tree.parent_edge[v] == e:
        return u, v
    return None


def essential_vantage_points(g: WeightedGraph, s_set: Iterable[int], e: int) -> frozenset:
    """Vantage points whose probes reach ``e`` with no other vantage point on the way.

    Vantage points at an endpoint of ``e`` are handled by the callers'
    short-circuit (the edge is then always revealed), so such a point is
    reported alone.
    """
    s_set = frozenset(s_set)
    if not _is_geodesic(g, e):
        return frozenset()
    u, v = g.endpoints(e)
    if u in s_set or v in s_set:
        return frozenset(s_set & {u, v})
    out = set()
    for s in s_set:
        sides = _sides(g, s, e)
        if sides is None:
            continue
        near, _ = sides
        inner = g.spt(s).vertices_to(near)[1:]
        if not any(x in s_set for x in inner):
            out.add(s)
    return frozenset(out)


def build_edge_tree(g: WeightedGraph, s_set: Iterable[int], e: int) -> Union[EdgeTree, TreeMarker]:
    s_set = frozenset(s_set)
    if not _is_geodesic(g, e):
        return EMPTY
    u, v = g.endpoints(e)
    if u in s_set or v in s_set:
        return INCIDENT
    essential = essential_vantage_points(g, s_set, e)
    if not essential:
        return EMPTY
    parent = {e: None}
    for s in sorted(essential):
        near, _ = _sides(g, s, e)
        path = g.spt(s).path_to(near)  # s ... near, then e
        child_of = e
        for f in reversed(path):
            known = parent.get(f, child_of)
            if known != child_of:
                raise ValueError(
                    f"probe paths toward edge {e} do not form a tree; "
                    "counting needs a consistent routing"
                )
            parent[f] = child_of
            child_of = f
    nodes = (e,) + tuple(sorted(x for x in parent if x != e))
    return EdgeTree(nodes, parent)


def reveal_probability(g: WeightedGraph, s_set: Iterable[int], e: int) -> Fraction:
    """``Pr[e is revealed]`` for a uniformly random capacity permutation."""
    tree = build_edge_tree(g, s_set, e)
    if tree is INCIDENT:
        return Fraction(1)
    if tree is EMPTY:
        return Fraction(0)
    return Fraction(count_good_labellings(tree), factorial(len(tree)))


def expected_reveals(g: WeightedGraph, s_set: Iterable[int]) -> Fraction:
    """Expected number of revealed edges, summed edge by edge."""
    s_set = frozenset(s_set)
    return sum((reveal_probability(g, s_set, e) for e in range(g.m)), Fraction(0))


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"
