"""Capacity model and which edges a set of vantage points reveals."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .graph import GraphFormatError, WeightedGraph, path_between


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed its configured budget."""

    def __init__(self, message, required):
        super().__init__(message)
        self.required = required


@dataclass(frozen=True)
class CapacityAssignment:
    """Relative edge capacities as ranks, ``ranks[e]`` in ``1..m`` (1 = smallest)."""

    ranks: tuple[int, ...]

    def __post_init__(self):
        ranks = tuple(int(r) for r in self.ranks)
        object.__setattr__(self, "ranks", ranks)
        if sorted(ranks) != list(range(1, len(ranks) + 1)):
            raise ValueError("capacity ranks must be a permutation of 1..m")

    @classmethod
    def from_order(cls, order: Sequence[int]) -> "CapacityAssignment":
        """Build from edge indices listed from smallest to largest capacity."""
        ranks = [0] * len(order)
        for r, e in enumerate(order, 1):
            ranks[e] = r
        return cls(tuple(ranks))

    def __len__(self):
        return len(self.ranks)

    def __getitem__(self, e):
        return self.ranks[e]


@dataclass
class RevealReport:
    vantage_points: frozenset
    revealed: frozenset
    per_vantage: dict = field(default_factory=dict)

    def to_dict(self, k: Optional[int] = None) -> dict:
        k = len(self.vantage_points) if k is None else k
        return {
            "k": k,
            "alpha": f"{len(self.vantage_points)}/{k}" if k else None,
            "revealed_count": len(self.revealed),
            "revealed_edges": sorted(self.revealed),
            "per_vantage": {str(s): sorted(es) for s, es in sorted(self.per_vantage.items())},
        }


def _check_capacities(g: WeightedGraph, c: CapacityAssignment):
    if len(c) != g.m:
        raise ValueError(f"capacity assignment has {len(c)} ranks for {g.m} edges")


def reveal_from(g: WeightedGraph, s: int, ranks: Sequence[int]) -> set[int]:
    """Edges revealed by probing from ``s``: prefix-minimum edges of its tree."""
    tree = g.spt(s)
    out = set()
    stack = [(s, g.m + 1)]
    while stack:
        u, low = stack.pop()
        for v in tree.children[u]:
            e = tree.parent_edge[v]
            r = ranks[e]
            if r < low:
                out.add(e)
                stack.append((v, r))
            else:
                stack.append((v, low))
    return out


def reveal_mask(g: WeightedGraph, s: int, ranks: Sequence[int]) -> int:
    mask = 0
    for e in reveal_from(g, s, ranks):
        mask |= 1 << e
    return mask


def revealed_edges(g: WeightedGraph, s_set: Iterable[int], c: CapacityAssignment) -> RevealReport:
    _check_capacities(g, c)
    s_set = frozenset(s_set)
    per = {s: frozenset(reveal_from(g, s, c.ranks)) for s in sorted(s_set)}
    revealed = frozenset().union(*per.values()) if per else frozenset()
    return RevealReport(s_set, revealed, per)


def revealed_edges_brute_force(g: WeightedGraph, s_set: Iterable[int], c: CapacityAssignment) -> set[int]:
    """Reference semantics: the strict-minimum edge of every probed path."""
    _check_capacities(g, c)
    out = set()
    for s in s_set:
        for t in range(g.n):
            path = path_between(g, s, t)
            if not path:
                continue
            ranks = [c.ranks[e] for e in path]
            low = min(ranks)
            if ranks.count(low) == 1:
                out.add(path[ranks.index(low)])
    return out


def brute_force_opt(g: WeightedGraph, c: CapacityAssignment, k: int, budget: int = 2_000_000):
    """Best ``k`` vantage points for known capacities, by enumeration.

    Returns ``(best_set, opt_count)``; among maximizers the lexicographically
    smallest set wins.
    """
    _check_capacities(g, c)
    if not 0 <= k <= g.n:
        raise ValueError(f"k={k} out of range 0..{g.n}")
    required = comb(g.n, k)
    if required > budget:
        raise BudgetExceededError(f"C({g.n},{k}) = {required} subsets exceeds budget {budget}", required)
    masks = [reveal_mask(g, v, c.ranks) for v in range(g.n)]
    best_set, best = (), -1
    for subset in combinations(range(g.n), k):
        mask = 0
        for v in subset:
            mask |= masks[v]
        count = mask.bit_count()
        if count > best:
            best_set, best = subset, count
    return best_set, best


def parse_capacities(text: str, m: Optional[int] = None) -> CapacityAssignment:
    """Parse ``edge_index rank`` lines into a validated assignment."""
    pairs = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'edge_index rank'")
        try:
            e, r = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer entry") from None
        if e in pairs:
            raise GraphFormatError(f"line {lineno}: edge {e} listed twice")
        pairs[e] = r
    size = len(pairs) if m is None else m
    if sorted(pairs) != list(range(size)):
        raise GraphFormatError(f"capacity file must list every edge 0..{size - 1} exactly once")
    try:
        return CapacityAssignment(tuple(pairs[e] for e in range(size)))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def format_capacities(c: CapacityAssignment) -> str:
    return "".join(f"{e} {r}\n" for e, r in enumerate(c.ranks))


def read_capacities(path, m: Optional[int] = None) -> CapacityAssignment:
    return parse_capacities(Path(path).read_text(), m)


def write_capacities(c: CapacityAssignment, path) -> None:
    Path(path).write_text(format_capacities(c))


def report_json(report: RevealReport, k: Optional[int] = None) -> str:
    return json.dumps(report.to_dict(k), indent=2)
