"""Weighted undirected graphs, shortest-path trees and path queries.

Every algorithm in the package probes along shortest paths, so the routing
has to be deterministic even when several paths tie.  The default routing
breaks ties with a symbolic perturbation: edge ``e`` gets an extra weight of
``eps * 2**rank(e)`` where ``rank`` orders edges by their sorted endpoint
pair.  The perturbed metric has unique shortest paths, which keeps every
shortest-path tree consistent with every other one (subpaths of chosen
paths are chosen paths) and makes ``path_between(s, t)`` the exact reverse
of ``path_between(t, s)``.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence


class InvalidGraphError(ValueError):
    """Raised when an edge list does not describe a valid simple graph."""


class GraphFormatError(ValueError):
    """Raised for malformed graph, capacity or division files."""


def _as_weight(w) -> Fraction:
    if isinstance(w, float):
        # floats go through their repr so 0.1 means 1/10, not the binary value
        return Fraction(repr(w))
    return Fraction(w)


@dataclass(frozen=True)
class ShortestPathTree:
    root: int
    parent_edge: tuple[Optional[int], ...]
    parent: tuple[Optional[int], ...]
    distance: tuple[Optional[Fraction], ...]
    children: tuple[tuple[int, ...], ...]

    def reaches(self, v: int) -> bool:
        return self.distance[v] is not None

    def path_to(self, t: int) -> Optional[list[int]]:
        """Edge indices from the root to ``t``; ``None`` if unreachable."""
        if self.distance[t] is None:
            return None
        edges = []
        while t != self.root:
            edges.append(self.parent_edge[t])
            t = self.parent[t]
        edges.reverse()
        return edges

    def vertices_to(self, t: int) -> list[int]:
        """Vertex sequence from the root to ``t``."""
        out = [t]
        while t != self.root:
            t = self.parent[t]
            out.append(t)
        out.reverse()
        return out

    def preorder(self) -> list[int]:
        order, stack = [], [self.root]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(reversed(self.children[v]))
        return order


class PerturbedRouting:
    """Default routing: exact Dijkstra with the symbolic edge perturbation."""

    name = "perturbed"

    def tree(self, g: "WeightedGraph", s: int) -> ShortestPathTree:
        n = g.n
        key: list = [None] * n
        parent_edge: list = [None] * n
        parent: list = [None] * n
        key[s] = (Fraction(0), 0)
        heap = [(Fraction(0), 0, s)]
        done = [False] * n
        while heap:
            d, mask, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            for e in g.adjacency[u]:
                a, b, w = g.edges[e]
                v = b if a == u else a
                if done[v]:
                    continue
                cand = (d + w, mask + g.tiebreak_bit(e))
                if key[v] is None or cand < key[v]:
                    key[v] = cand
                    parent_edge[v] = e
                    parent[v] = u
                    heapq.heappush(heap, (cand[0], cand[1], v))
        return _assemble(g, s, parent_edge, parent, [k[0] if k else None for k in key])

    def describe(self) -> dict:
        return {"name": self.name}


class TorusRowFirstRouting:
    """Canonical torus routing: along the root's row first, then vertically.

    Vertex ``(r, c)`` has id ``r * side + c``.  Ties at half the side length
    are resolved toward increasing row/column index.
    """

    name = "torus-row-first"

    def __init__(self, side: int):
        self.side = side

    def tree(self, g: "WeightedGraph", s: int) -> ShortestPathTree:
        side = self.side
        if g.n != side * side:
            raise InvalidGraphError("torus routing needs side*side vertices")
        r0, c0 = divmod(s, side)
        n = g.n
        parent: list = [None] * n
        parent_edge: list = [None] * n
        dist: list = [None] * n
        for v in range(n):
            if v == s:
                continue
            r, c = divmod(v, side)
            if r == r0:
                dc = (c - c0) % side
                p = r * side + ((c - 1) % side if 2 * dc <= side else (c + 1) % side)
            else:
                dr = (r - r0) % side
                p = ((r - 1) % side if 2 * dr <= side else (r + 1) % side) * side + c
            parent[v] = p
            parent_edge[v] = g.edge_index(v, p)
        dist[s] = Fraction(0)
        for v in g.vertices_by_tree_order(s, parent):
            if v != s:
                dist[v] = dist[parent[v]] + g.weight(parent_edge[v])
        return _assemble(g, s, parent_edge, parent, dist)

    def describe(self) -> dict:
        return {"name": self.name, "side": self.side}


def routing_from_description(desc: Optional[dict]):
    if not desc or desc.get("name") == PerturbedRouting.name:
        return None
    if desc["name"] == TorusRowFirstRouting.name:
        return TorusRowFirstRouting(int(desc["side"]))
    raise GraphFormatError(f"unknown routing policy {desc['name']!r}")


def _assemble(g, s, parent_edge, parent, dist) -> ShortestPathTree:
    children: list[list[int]] = [[] for _ in range(g.n)]
    for v in range(g.n):
        if parent[v] is not None:
            children[parent[v]].append(v)
    return ShortestPathTree(
        root=s,
        parent_edge=tuple(parent_edge),
        parent=tuple(parent),
        distance=tuple(dist),
        children=tuple(tuple(sorted(ch)) for ch in children),
    )


@dataclass(eq=False)
class WeightedGraph:
    """Undirected simple graph with positive exact weights.

    Edge indices follow the input order and never change.  Instances are
    treated as immutable; shortest-path trees are cached per root.
    """

    n: int
    edges: tuple[tuple[int, int, Fraction], ...]
    routing: Optional[object] = None
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    _index: dict = field(init=False, repr=False)
    _bits: tuple[int, ...] = field(init=False, repr=False)
    _spt_cache: dict = field(init=False, repr=False)

    def __post_init__(self):
        adj: list[list[int]] = [[] for _ in range(self.n)]
        index = {}
        for i, (u, v, _) in enumerate(self.edges):
            adj[u].append(i)
            adj[v].append(i)
            index[(min(u, v), max(u, v))] = i
        self.adjacency = tuple(tuple(a) for a in adj)
        self._index = index
        order = sorted(range(len(self.edges)), key=lambda i: (min(self.edges[i][:2]), max(self.edges[i][:2])))
        bits = [0] * len(self.edges)
        for rank, i in enumerate(order):
            bits[i] = 1 << rank
        self._bits = tuple(bits)
        self._spt_cache = {}

    @property
    def m(self) -> int:
        return len(self.edges)

    def weight(self, e: int) -> Fraction:
        return self.edges[e][2]

    def endpoints(self, e: int) -> tuple[int, int]:
        u, v, _ = self.edges[e]
        return u, v

    def edge_index(self, u: int, v: int) -> int:
        return self._index[(min(u, v), max(u, v))]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._index

    def tiebreak_bit(self, e: int) -> int:
        return self._bits[e]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> list[int]:
        out = []
        for e in self.adjacency[v]:
            a, b, _ = self.edges[e]
            out.append(b if a == v else a)
        return out

    def with_routing(self, routing) -> "WeightedGraph":
        return WeightedGraph(self.n, self.edges, routing)

    def spt(self, s: int) -> ShortestPathTree:
        tree = self._spt_cache.get(s)
        if tree is None:
            if not 0 <= s < self.n:
                raise ValueError(f"vertex {s} out of range 0..{self.n - 1}")
            tree = (self.routing or _DEFAULT_ROUTING).tree(self, s)
            self._spt_cache[s] = tree
        return tree

    def vertices_by_tree_order(self, root, parent) -> list[int]:
        children: list[list[int]] = [[] for _ in range(self.n)]
        for v, p in enumerate(parent):
            if p is not None:
                children[p].append(v)
        order, stack = [], [root]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(children[v])
        return order

    def is_tree(self) -> bool:
        return self.n >= 1 and self.m == self.n - 1 and len(connected_component(self, 0)) == self.n

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m})"


_DEFAULT_ROUTING = PerturbedRouting()


def build_graph(edge_list: Iterable[Sequence], n: Optional[int] = None, routing=None) -> WeightedGraph:
    """Validate ``(u, v, weight)`` triples and build a graph.

    ``n`` defaults to one more than the largest vertex id.  Errors name the
    offending edge by its position in the input.
    """
    triples = [tuple(t) for t in edge_list]
    if n is None:
        n = 1 + max((max(t[0], t[1]) for t in triples), default=-1)
    seen = set()
    edges = []
    for i, t in enumerate(triples):
        if len(t) == 2:
            u, v, w = t[0], t[1], 1
        elif len(t) == 3:
            u, v, w = t
        else:
            raise InvalidGraphError(f"edge {i}: expected (u, v, weight), got {t!r}")
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidGraphError(f"edge {i}: vertex out of range in {t!r} (n={n})")
        if u == v:
            raise InvalidGraphError(f"edge {i}: self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InvalidGraphError(f"edge {i}: duplicate edge {key}")
        w = _as_weight(w)
        if w <= 0:
            raise InvalidGraphError(f"edge {i}: nonpositive weight {w}")
        seen.add(key)
        edges.append((u, v, w))
    return WeightedGraph(n, tuple(edges), routing)


def shortest_path_tree(g: WeightedGraph, s: int) -> ShortestPathTree:
    return g.spt(s)


def path_between(g: WeightedGraph, s: int, t: int) -> Optional[list[int]]:
    """Edge indices of the routed shortest path from ``s`` to ``t``.

    Returns ``None`` when ``t`` is not reachable from ``s``.
    """
    return g.spt(s).path_to(t)


def path_weight(g: WeightedGraph, path: Iterable[int]) -> Fraction:
    return sum((g.weight(e) for e in path), Fraction(0))


def connected_component(g: WeightedGraph, s: int) -> set[int]:
    seen = {s}
    stack = [s]
    while stack:
        u = stack.pop()
        for v in g.neighbors(u):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def certify_unique_paths(g: WeightedGraph) -> list[tuple[int, int]]:
    """Pairs ``(s, t)``, ``s < t``, joined by two or more minimum-weight paths.

    Counts shortest paths on the exact (unperturbed) metric, so the answer
    does not depend on any tie-break rule.
    """
    tied = []
    for s in range(g.n):
        dist: list = [None] * g.n
        dist[s] = Fraction(0)
        heap = [(Fraction(0), s)]
        done = [False] * g.n
        order = []
        while heap:
            d, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            order.append(u)
            for e in g.adjacency[u]:
                a, b, w = g.edges[e]
                v = b if a == u else a
                if dist[v] is None or d + w < dist[v]:
                    dist[v] = d + w
                    heapq.heappush(heap, (d + w, v))
        count = [0] * g.n
        count[s] = 1
        for u in order:
            for e in g.adjacency[u]:
                a, b, w = g.edges[e]
                v = b if a == u else a
                if dist[u] + w == dist[v]:
                    count[v] += count[u]
        tied.extend((s, t) for t in range(s + 1, g.n) if count[t] >= 2)
    return tied


def parse_graph(text: str) -> WeightedGraph:
    """Parse the text format: header ``n m`` then ``m`` lines ``u v w``."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise GraphFormatError("empty graph file")
    lineno, header = rows[0]
    try:
        n, m = (int(x) for x in header)
    except ValueError:
        raise GraphFormatError(f"line {lineno}: expected header 'n m', got {' '.join(header)!r}") from None
    body = rows[1:]
    if len(body) != m:
        raise GraphFormatError(f"header declares {m} edges but file has {len(body)}")
    edges = []
    for lineno, parts in body:
        if len(parts) != 3:
            raise GraphFormatError(f"line {lineno}: expected 'u v w', got {' '.join(parts)!r}")
        try:
            edges.append((int(parts[0]), int(parts[1]), Fraction(parts[2])))
        except (ValueError, ZeroDivisionError):
            raise GraphFormatError(f"line {lineno}: bad edge {' '.join(parts)!r}") from None
    try:
        return build_graph(edges, n=n)
    except InvalidGraphError as exc:
        idx = int(str(exc).split(":")[0].split()[1])
        raise GraphFormatError(f"line {body[idx][0]}: {exc}") from None


def format_graph(g: WeightedGraph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v} {w}" for u, v, w in g.edges]
    return "\n".join(lines) + "\n"


def read_graph(path) -> WeightedGraph:
    return parse_graph(Path(path).read_text())


def write_graph(g: WeightedGraph, path) -> None:
    Path(path).write_text(format_graph(g))
