"""Greedy vantage-point selection for the expected number of reveals."""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .counting import expected_reveals, format_fraction
from .graph import WeightedGraph


@dataclass(frozen=True)
class GreedyStep:
    vertex: int
    gain: Fraction
    value: Fraction


@dataclass(frozen=True)
class GreedyTrace:
    steps: tuple[GreedyStep, ...]

    @property
    def final_set(self) -> tuple[int, ...]:
        return tuple(sorted(s.vertex for s in self.steps))

    @property
    def value(self) -> Fraction:
        return self.steps[-1].value if self.steps else Fraction(0)

    def to_dict(self) -> dict:
        return {
            "k": len(self.steps),
            "final_set": list(self.final_set),
            "f": format_fraction(self.value),
            "f_decimal": float(self.value),
            "steps": [
                {
                    "vertex": s.vertex,
                    "gain": format_fraction(s.gain),
                    "gain_decimal": float(s.gain),
                    "f": format_fraction(s.value),
                    "f_decimal": float(s.value),
                }
                for s in self.steps
            ],
        }


def greedy_non_adaptive(g: WeightedGraph, k: int, lazy: bool = False) -> GreedyTrace:
    """Add the vertex with the largest exact marginal gain, ``k`` times.

    Ties go to the lowest vertex id.  ``lazy=True`` keeps stale gains in a
    heap and re-evaluates only the top; submodularity makes stale gains
    upper bounds, so both modes pick the same vertices.
    """
    if not 1 <= k <= g.n:
        raise ValueError(f"k={k} out of range 1..{g.n}")
    chosen: list[int] = []
    current = Fraction(0)
    steps = []
    if not lazy:
        for _ in range(k):
            best = None
            for w in range(g.n):
                if w in chosen:
                    continue
                val = expected_reveals(g, chosen + [w])
                if best is None or val > best[1]:
                    best = (w, val)
            w, val = best
            steps.append(GreedyStep(w, val - current, val))
            chosen.append(w)
            current = val
        return GreedyTrace(tuple(steps))

    heap = [(-expected_reveals(g, [w]), w, 0) for w in range(g.n)]
    heapq.heapify(heap)
    for rnd in range(k):
        while True:
            neg, w, stamp = heapq.heappop(heap)
            if stamp == rnd:
                break
            gain = expected_reveals(g, chosen + [w]) - current
            if not heap or (-gain, w) <= heap[0][:2]:
                neg = -gain
                break
            heapq.heappush(heap, (-gain, w, rnd))
        gain = -neg
        current += gain
        chosen.append(w)
        steps.append(GreedyStep(w, gain, current))
    return GreedyTrace(tuple(steps))
