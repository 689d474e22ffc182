"""Worst-case selection algorithms for trees and planar graphs.

Both tree algorithms are built on a cover: repeatedly take the deepest
vertex whose subtree still holds at least ``gamma`` vertices and cut that
subtree off.  Whatever root is used afterwards, all but ``gamma`` vertices
hang below some cover vertex, which is what the approximation guarantees
rest on.  For planar graphs every boundary vertex of an r-division is used.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .graph import GraphFormatError, InvalidGraphError, WeightedGraph


@dataclass(frozen=True)
class TreeCover:
    gamma: int
    root_used: int
    members: tuple[int, ...]


@dataclass(frozen=True)
class RDivision:
    pieces: tuple[frozenset, ...]
    boundary: tuple[frozenset, ...]
    r: Optional[int] = None

    @property
    def boundary_vertices(self) -> frozenset:
        return frozenset().union(*self.boundary) if self.boundary else frozenset()

    @property
    def max_piece_size(self) -> int:
        return max((len(p) for p in self.pieces), default=0)

    @property
    def max_boundary_size(self) -> int:
        return max((len(b) for b in self.boundary), default=0)

    def constants(self) -> dict:
        """Size constants relative to ``r`` and ``sqrt(r)``."""
        r = self.r or max(self.max_piece_size, 1)
        return {
            "r": r,
            "pieces": len(self.pieces),
            "max_piece_size": self.max_piece_size,
            "max_boundary_size": self.max_boundary_size,
            "piece_constant": self.max_piece_size / r,
            "boundary_constant": self.max_boundary_size / math.sqrt(r),
        }


def _require_tree(g: WeightedGraph):
    if not g.is_tree():
        raise InvalidGraphError("input is not a tree (need a connected graph with n-1 edges)")


def _rooted(g: WeightedGraph, root: int):
    parent = [None] * g.n
    depth = [0] * g.n
    order = [root]
    seen = {root}
    for u in order:
        for v in g.neighbors(u):
            if v not in seen:
                seen.add(v)
                parent[v] = u
                depth[v] = depth[u] + 1
                order.append(v)
    return parent, depth, order


def tree_cover(g: WeightedGraph, root: int, gamma: int) -> TreeCover:
    _require_tree(g)
    if not 1 <= gamma <= g.n:
        raise ValueError(f"gamma={gamma} out of range 1..{g.n}")
    parent, depth, order = _rooted(g, root)
    alive = [True] * g.n
    remaining = g.n
    members = []
    while remaining > gamma:
        size = [0] * g.n
        for v in reversed(order):
            if alive[v]:
                size[v] += 1
                if parent[v] is not None:
                    size[parent[v]] += size[v]
        pick = min(
            (v for v in range(g.n) if alive[v] and size[v] >= gamma),
            key=lambda v: (-depth[v], v),
        )
        members.append(pick)
        # cut the subtree of pick
        stack = [pick]
        while stack:
            x = stack.pop()
            alive[x] = False
            remaining -= 1
            stack.extend(y for y in g.neighbors(x) if alive[y] and parent[y] == x)
    return TreeCover(gamma, root, tuple(members))


def uncovered_count(g: WeightedGraph, members: Sequence[int], root: int) -> int:
    """Vertices that are not descendants (inclusive) of any member, rooted at ``root``."""
    marks = set(members)
    parent, _, order = _rooted(g, root)
    covered = [False] * g.n
    for v in order:
        covered[v] = v in marks or (parent[v] is not None and covered[parent[v]])
    return covered.count(False)


def _pad(points: list[int], n: int, size: int) -> list[int]:
    chosen = set(points)
    for v in range(n):
        if len(chosen) >= size:
            break
        chosen.add(v)
    return sorted(chosen)


def _check_alpha(n: int, k: int, alpha) -> int:
    if k < 1 or alpha < 1:
        raise ValueError("k and alpha must be at least 1")
    budget = int(alpha * k)
    if budget > n:
        raise ValueError(f"alpha*k = {budget} exceeds n = {n}")
    if alpha > math.sqrt(n / k):
        warnings.warn(f"alpha={alpha} exceeds sqrt(n/k)={math.sqrt(n / k):.3f}; no guarantee applies")
    return budget


def adaptive_tree_deterministic(g: WeightedGraph, k: int, alpha) -> list[int]:
    """Cover with ``gamma = ceil(n / (alpha k))``, padded to ``alpha k`` points."""
    _require_tree(g)
    budget = _check_alpha(g.n, k, alpha)
    gamma = math.ceil(g.n / budget)
    cover = tree_cover(g, 0, gamma)
    return _pad(list(cover.members), g.n, budget)


def adaptive_tree_randomized(g: WeightedGraph, k: int, alpha, seed=None) -> list[int]:
    """``alpha k`` points drawn without replacement from the ``ceil(sqrt(n/k))`` cover."""
    _require_tree(g)
    budget = _check_alpha(g.n, k, alpha)
    gamma = math.ceil(math.sqrt(g.n / k))
    members = list(tree_cover(g, 0, gamma).members)
    if len(members) <= budget:
        return _pad(members, g.n, budget)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    picked = rng.choice(len(members), size=budget, replace=False)
    return sorted(members[i] for i in picked)


def is_grid(g: WeightedGraph, width: int, height: int) -> bool:
    """True if ``g`` is exactly the ``width x height`` grid with id ``y*width + x``."""
    if g.n != width * height:
        return False
    expected = set()
    for y in range(height):
        for x in range(width):
            v = y * width + x
            if x + 1 < width:
                expected.add((v, v + 1))
            if y + 1 < height:
                expected.add((v, v + width))
    return {(min(u, v), max(u, v)) for u, v, _ in g.edges} == expected


def _division_from_labels(g: WeightedGraph, label: Sequence[int], r=None) -> RDivision:
    ids = sorted(set(label))
    pieces = [set() for _ in ids]
    boundary = [set() for _ in ids]
    pos = {p: i for i, p in enumerate(ids)}
    for v in range(g.n):
        pieces[pos[label[v]]].add(v)
    for u, v, _ in g.edges:
        if label[u] != label[v]:
            boundary[pos[label[u]]].add(u)
            boundary[pos[label[v]]].add(v)
    return RDivision(tuple(map(frozenset, pieces)), tuple(map(frozenset, boundary)), r)


def grid_r_division(g: WeightedGraph, width: int, height: int, r: int) -> RDivision:
    """Axis-aligned blocks of side ``floor(sqrt(r))`` on a declared grid.

    A block's boundary is its set of vertices with a neighbour in another
    block.
    """
    if not is_grid(g, width, height):
        raise InvalidGraphError(
            f"graph is not a {width}x{height} grid; supply an external division (load_r_division)"
        )
    if r < 1:
        raise ValueError("r must be positive")
    if r >= g.n:
        return _division_from_labels(g, [0] * g.n, r)
    side = max(1, math.isqrt(r))
    bw = math.ceil(width / side)
    label = [(v // width) // side * bw + (v % width) // side for v in range(g.n)]
    return _division_from_labels(g, label, r)


def parse_r_division(g: WeightedGraph, text: str, r=None) -> RDivision:
    label: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'vertex_id piece_id'")
        try:
            v, p = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer entry") from None
        if not 0 <= v < g.n:
            raise GraphFormatError(f"line {lineno}: vertex {v} out of range")
        if v in label:
            raise GraphFormatError(f"line {lineno}: vertex {v} assigned twice")
        label[v] = p
    missing = [v for v in range(g.n) if v not in label]
    if missing:
        raise GraphFormatError(f"division does not cover vertices {missing[:10]}")
    return _division_from_labels(g, [label[v] for v in range(g.n)], r)


def load_r_division(g: WeightedGraph, path, r=None) -> RDivision:
    return parse_r_division(g, Path(path).read_text(), r)


def format_r_division(division: RDivision) -> str:
    rows = sorted((v, i) for i, piece in enumerate(division.pieces) for v in piece)
    return "".join(f"{v} {i}\n" for v, i in rows)


def planar_r(n: int, k: int) -> int:
    return math.ceil((n / k) ** (2 / 3))


def planar_adaptive(g: WeightedGraph, division: RDivision, k: int) -> list[int]:
    """All boundary vertices of the division; ``k`` lowest ids if there are none."""
    covered = frozenset().union(*division.pieces) if division.pieces else frozenset()
    if covered != frozenset(range(g.n)):
        raise ValueError("division does not cover the graph")
    points = sorted(division.boundary_vertices)
    if not points:
        points = list(range(min(k, g.n)))
    return points
