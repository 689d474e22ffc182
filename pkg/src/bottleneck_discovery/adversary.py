"""Interactive adversary for deterministic adaptive strategies on path families.

The graph is ``k`` disjoint paths.  Each time the strategy picks a vertex,
the adversary reveals only the still-unrevealed edges incident to it and
gives them the next lowest ranks of that path.  Unrevealed edges therefore
always outrank revealed ones on the same path, so nothing else can be a
record from any chosen vertex.  At the end every path gets a planted
stretch of decreasing capacities that a single well-placed vantage point
would have revealed in full.  Those witness points form a k-point set, and
what they reveal under the final capacities lower-bounds the optimum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .graph import WeightedGraph
from .instances import gen_path_family
from .reveal import CapacityAssignment, revealed_edges


class AdversaryError(RuntimeError):
    """The adversary's own bookkeeping is inconsistent (a bug, not a strategy fault)."""


@dataclass(frozen=True)
class Move:
    round: int
    vertex: int
    revealed: tuple[tuple[int, int], ...]  # (edge, rank)


@dataclass
class GameView:
    """What a strategy is allowed to see."""

    n: int
    k: int
    budget: int
    path_vertices: int
    moves: list = field(default_factory=list)

    @property
    def selected(self) -> set:
        return {mv.vertex for mv in self.moves}

    @property
    def revealed(self) -> dict:
        return {e: r for mv in self.moves for e, r in mv.revealed}

    def path_of(self, v: int) -> int:
        return v // self.path_vertices


@dataclass
class GameTranscript:
    n: int
    k: int
    budget: int
    strategy: str
    moves: list
    lambdas: list
    final_capacities: Optional[CapacityAssignment] = None
    stretch_claims: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    witness_reveals: list = field(default_factory=list)
    opt_lower_bound: int = 0
    alg_revealed: int = 0
    alpha: Fraction = Fraction(0)
    beta: object = Fraction(0)
    seed: Optional[int] = None
    fault: Optional[str] = None

    @property
    def selections(self) -> list[int]:
        return [mv.vertex for mv in self.moves]

    def to_dict(self) -> dict:
        beta = self.beta
        return {
            "n": self.n,
            "k": self.k,
            "budget": self.budget,
            "strategy": self.strategy,
            "seed": self.seed,
            "fault": self.fault,
            "moves": [
                {"round": mv.round, "vertex": mv.vertex, "revealed": [list(p) for p in mv.revealed]}
                for mv in self.moves
            ],
            "lambda": self.lambdas,
            "stretch_claims": self.stretch_claims,
            "witnesses": self.witnesses,
            "witness_reveals": self.witness_reveals,
            "opt_lower_bound": self.opt_lower_bound,
            "alg_revealed": self.alg_revealed,
            "alpha": f"{self.alpha.numerator}/{self.alpha.denominator}",
            "beta": "inf" if beta == math.inf else f"{beta.numerator}/{beta.denominator}",
            "beta_decimal": float(beta),
            "alpha2_beta_decimal": float(self.alpha) ** 2 * float(beta),
        }


class _State:
    def __init__(self, n: int, k: int):
        bundle = gen_path_family(n, k)
        self.graph: WeightedGraph = bundle.graph
        self.k = k
        self.length = bundle.metadata["path_vertices"]
        self.per = self.length - 1
        self.rank = {}
        self.next_rank = [p * self.per + 1 for p in range(k)]
        self.selected: list[int] = []

    def path_edges(self, p: int) -> list[int]:
        return list(range(p * self.per, (p + 1) * self.per))

    def select(self, v: int) -> list[tuple[int, int]]:
        p = v // self.length
        new = []
        for e in sorted(self.graph.adjacency[v]):
            if e not in self.rank:
                self.rank[e] = self.next_rank[p]
                self.next_rank[p] += 1
                new.append((e, self.rank[e]))
        self.selected.append(v)
        return new


Strategy = Callable[[GameView], int]


def play_adversary_game(n: int, k: int, budget: int, strategy, name: Optional[str] = None) -> GameTranscript:
    """Run ``budget`` rounds of ``strategy`` against the adversary and finalize."""
    state = _State(n, k)
    n_used = state.graph.n
    if not 0 <= budget <= n_used:
        raise ValueError(f"budget {budget} out of range 0..{n_used}")
    if isinstance(strategy, str):
        name = name or strategy
        strategy = make_strategy(strategy)
    view = GameView(n_used, k, budget, state.length)
    transcript = GameTranscript(n_used, k, budget, name or getattr(strategy, "__name__", "custom"), [], [])
    transcript.seed = getattr(strategy, "seed", None)
    for rnd in range(budget):
        v = int(strategy(view))
        if not 0 <= v < n_used or v in view.selected:
            transcript.moves = list(view.moves)
            transcript.fault = f"round {rnd}: strategy returned invalid or repeated vertex {v}"
            return transcript
        mv = Move(rnd, v, tuple(state.select(v)))
        view.moves.append(mv)
    transcript.moves = list(view.moves)
    adversary_finalize(state, transcript)
    measure_tradeoff(transcript)
    return transcript


def _stretch_claim(per: int, lam: int) -> int:
    if lam == 0:
        return per
    ell = per // (lam + 1) - 2
    return ell + 2 if ell > 0 else 0


def adversary_finalize(state: _State, transcript: GameTranscript):
    """Complete the ranks and certify the optimum's lower bound path by path."""
    g = state.graph
    ranks = dict(state.rank)
    chosen = set(state.selected)
    lambdas, claims, witnesses = [], [], []
    plans = []
    for p in range(state.k):
        base = p * state.length
        verts = range(base, base + state.length)
        lam = sum(1 for v in verts if v in chosen)
        lambdas.append(lam)
        claims.append(_stretch_claim(state.per, lam))
        edges = state.path_edges(p)
        if lam == 0:
            plans.append((base, edges))
            witnesses.append(base)
            continue
        # maximal runs of edges with no chosen endpoint, oriented left to right
        runs, cur = [], []
        for j, e in enumerate(edges):
            if base + j in chosen or base + j + 1 in chosen:
                if cur:
                    runs.append(cur)
                cur = []
            else:
                cur.append(j)
        if cur:
            runs.append(cur)
        if not runs:
            plans.append((None, []))
            witnesses.append(None)
            continue
        best = max(runs, key=lambda run: (len(run) + (run[0] > 0) + (run[-1] < state.per - 1), -run[0]))
        if best[0] == 0:
            # stretch touches the left end: plant decreasing toward the left
            start = base + best[-1] + 1
            plans.append((start, [edges[j] for j in reversed(best)]))
        else:
            start = base + best[0]
            plans.append((start, [edges[j] for j in best]))
        witnesses.append(start)
    for p, (start, stretch) in enumerate(plans):
        top = (p + 1) * state.per
        for e in stretch:
            if e in ranks:
                raise AdversaryError(f"planted edge {e} was already revealed")
            ranks[e] = top
            top -= 1
        for e in reversed(state.path_edges(p)):
            if e not in ranks:
                ranks[e] = top
                top -= 1
        if top != state.next_rank[p] - 1:
            raise AdversaryError(f"rank block of path {p} is not a bijection")
    caps = CapacityAssignment(tuple(ranks[e] for e in range(g.m)))
    reveals = []
    for p, w in enumerate(witnesses):
        got = 0 if w is None else len(revealed_edges(g, [w], caps).revealed)
        if got < claims[p]:
            raise AdversaryError(f"path {p}: witness reveals {got} < claimed {claims[p]}")
        reveals.append(got)
    transcript.final_capacities = caps
    transcript.lambdas = lambdas
    transcript.stretch_claims = claims
    transcript.witnesses = witnesses
    transcript.witness_reveals = reveals
    # the witnesses form a legal k-point set, so what they reveal bounds OPT
    planted = [w for w in witnesses if w is not None]
    transcript.opt_lower_bound = len(revealed_edges(g, planted, caps).revealed)
    if transcript.opt_lower_bound < sum(claims):
        raise AdversaryError("witness set reveals less than the claimed stretches")
    transcript.alg_revealed = len(revealed_edges(g, state.selected, caps).revealed)
    return caps, transcript.opt_lower_bound


def measure_tradeoff(transcript: GameTranscript):
    transcript.alpha = Fraction(len(transcript.moves), transcript.k)
    if transcript.alg_revealed == 0:
        transcript.beta = math.inf
    else:
        transcript.beta = Fraction(transcript.opt_lower_bound, transcript.alg_revealed)
    return transcript.alpha, transcript.beta


def replay_audit(transcript: GameTranscript) -> bool:
    """Replaying the moves under the final ranks reproduces every in-game reveal."""
    if transcript.final_capacities is None:
        return False
    g = gen_path_family(transcript.n, transcript.k).graph
    caps = transcript.final_capacities
    so_far: set = set()
    shown: dict = {}
    chosen = []
    for mv in transcript.moves:
        chosen.append(mv.vertex)
        now = set(revealed_edges(g, chosen, caps).revealed)
        new = now - so_far
        if new != {e for e, _ in mv.revealed}:
            return False
        if any(caps[e] != r for e, r in mv.revealed):
            return False
        shown.update(mv.revealed)
        so_far = now
        # unrevealed edges outrank every revealed edge of their path
        length = transcript.n // transcript.k
        for e in range(g.m):
            if e in shown:
                continue
            p = e // (length - 1)
            if any(caps[f] > caps[e] for f in shown if f // (length - 1) == p):
                return False
    return True


# strategy zoo ----------------------------------------------------------------


def first_vertex(view: GameView) -> int:
    chosen = view.selected
    return next(v for v in range(view.n) if v not in chosen)


def evenly_spaced(view: GameView) -> int:
    chosen = view.selected
    length = view.path_vertices
    plan = []
    for i in range(view.budget):
        p = i % view.k
        lam = view.budget // view.k + (1 if p < view.budget % view.k else 0)
        j = i // view.k
        plan.append(p * length + min(length - 1, (length * (j + 1)) // (lam + 1)))
    for v in plan:
        if v not in chosen:
            return v
    return first_vertex(view)


def _longest_free_run(view: GameView, p: int):
    chosen = view.selected
    base = p * view.path_vertices
    best, cur = None, []
    for v in range(base, base + view.path_vertices):
        if v in chosen:
            cur = []
            continue
        cur.append(v)
        if best is None or len(cur) > len(best):
            best = list(cur)
    return best


def mid_path(view: GameView) -> int:
    """Round-robin over paths; middle of the longest unselected stretch."""
    counts = [0] * view.k
    for v in view.selected:
        counts[view.path_of(v)] += 1
    for p in sorted(range(view.k), key=lambda p: (counts[p], p)):
        run = _longest_free_run(view, p)
        if run:
            return run[(len(run) - 1) // 2]
    return first_vertex(view)


def greedy_on_revealed(view: GameView) -> int:
    """Most unrevealed incident edges, then farthest from chosen points."""
    chosen = view.selected
    revealed = view.revealed
    length = view.path_vertices

    def score(v):
        p, j = divmod(v, length)
        base = p * length
        incident = []
        if j > 0:
            incident.append(p * (length - 1) + j - 1)
        if j < length - 1:
            incident.append(p * (length - 1) + j)
        fresh = sum(1 for e in incident if e not in revealed)
        gap = min((abs(v - u) for u in chosen if base <= u < base + length), default=length)
        return (fresh, gap, -v)

    return max((v for v in range(view.n) if v not in chosen), key=score)


class SeededOrder:
    """Randomized strategy derandomized by a pre-committed seed."""

    def __init__(self, seed: int = 0):
        self.seed = seed
        self._order = None

    def __call__(self, view: GameView) -> int:
        if self._order is None:
            self._order = [int(v) for v in np.random.default_rng(self.seed).permutation(view.n)]
        chosen = view.selected
        return next(v for v in self._order if v not in chosen)


STRATEGIES = {
    "first-vertex": lambda: first_vertex,
    "evenly-spaced": lambda: evenly_spaced,
    "mid-path": lambda: mid_path,
    "greedy-on-revealed": lambda: greedy_on_revealed,
    "random-seeded": lambda: SeededOrder(0),
}


def make_strategy(name: str, seed: Optional[int] = None):
    if name == "random-seeded" and seed is not None:
        return SeededOrder(seed)
    try:
        return STRATEGIES[name]()
    except KeyError:
        raise ValueError(f"unknown strategy {name!r}; choose from {sorted(STRATEGIES)}") from None
