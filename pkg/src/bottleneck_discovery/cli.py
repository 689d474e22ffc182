"""Command-line entry point.

Every subcommand prints a JSON report (exact fractions as ``p/q`` strings
next to decimal renditions) or, with ``--quiet``, only its headline number.
Exit status is 0 only when the operation finished and its audits passed.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from . import adaptive, adversary, counting, evaluation, greedy, instances
from .graph import GraphFormatError, InvalidGraphError, read_graph
from .reveal import BudgetExceededError, read_capacities, revealed_edges

JOBS_ENV = "BOTTLENECK_JOBS"


class CommandError(Exception):
    pass


def _frac(x) -> str:
    if x == math.inf:
        return "inf"
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _load(path, capacities=None):
    """Graph (and capacities) from a graph file or a bundle directory."""
    p = Path(path)
    if not p.exists():
        raise CommandError(f"no such file: {path}")
    caps = None
    if p.is_dir():
        bundle = instances.InstanceBundle.load(p)
        g, caps = bundle.graph, bundle.capacities
    else:
        g = read_graph(p)
    if capacities:
        caps = read_capacities(capacities, g.m)
    return g, caps


def _points(text):
    return sorted({int(x) for x in text.split(",") if x.strip()}) if text else []


def _metrics(g, caps, points, k, result):
    if caps is None:
        return
    result["revealed_count"] = len(revealed_edges(g, points, caps).revealed)
    try:
        alpha, beta, opt = evaluation.measure_alpha_beta(g, caps, points, k)
    except BudgetExceededError as exc:
        result["opt"] = f"skipped: {exc}"
        return
    result.update(opt=opt, beta=_frac(beta), beta_decimal=float(beta))


def cmd_solve(args):
    g, caps = _load(args.graph, args.capacities)
    if args.mode == "nonadaptive":
        trace = greedy.greedy_non_adaptive(g, args.k, lazy=args.lazy)
        result = trace.to_dict()
        return result, result["f"]
    if args.mode == "tree":
        if not g.is_tree():
            raise CommandError("input graph is not a tree")
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            if args.randomized:
                pts = adaptive.adaptive_tree_randomized(g, args.k, args.alpha, args.seed)
            else:
                pts = adaptive.adaptive_tree_deterministic(g, args.k, args.alpha)
        result = {
            "algorithm": "tree-randomized" if args.randomized else "tree-deterministic",
            "k": args.k,
            "alpha": args.alpha,
            "seed": args.seed,
            "vantage_points": pts,
            "warnings": [str(w.message) for w in caught],
        }
        _metrics(g, caps, pts, args.k, result)
        return result, ",".join(map(str, pts))
    # planar
    r = args.r if args.r else adaptive.planar_r(g.n, args.k)
    if args.grid:
        try:
            w, h = (int(x) for x in args.grid.lower().split("x"))
        except ValueError:
            raise CommandError(f"--grid expects WxH, got {args.grid!r}") from None
        division = adaptive.grid_r_division(g, w, h, r)
    elif args.division:
        division = adaptive.load_r_division(g, args.division, r)
    else:
        raise CommandError("solve planar needs --grid WxH or --division FILE")
    pts = adaptive.planar_adaptive(g, division, args.k)
    result = {
        "algorithm": "planar-boundary",
        "k": args.k,
        "r": r,
        "division": division.constants(),
        "vantage_points": pts,
        "alpha": _frac(Fraction(len(pts), args.k)),
        "alpha_decimal": len(pts) / args.k,
    }
    _metrics(g, caps, pts, args.k, result)
    return result, ",".join(map(str, pts))


def cmd_adversary(args):
    strategy = adversary.make_strategy(args.strategy, args.seed)
    t = adversary.play_adversary_game(args.n, args.k, args.budget, strategy, name=args.strategy)
    if t.fault:
        raise CommandError(t.fault)
    result = t.to_dict()
    result["replay_audit"] = adversary.replay_audit(t)
    result["bound_n_over_24k"] = t.n / (24 * t.k)
    if not result["replay_audit"]:
        raise CommandError("replay audit failed")
    return result, result["beta"]


def cmd_gen(args):
    kind = args.kind
    if kind == "pathfamily":
        bundle = instances.gen_path_family(args.n, args.k)
    elif kind == "randlb":
        bundle = instances.gen_randomized_lb_instance(args.n, args.k, args.seed)
    elif kind == "torus":
        bundle = instances.gen_torus_instance(args.side, args.chosen, args.seed)
    elif kind == "vcreduce":
        src = read_graph(args.graph)
        bundle = instances.gen_vertex_cover_reduction([(u, v) for u, v, _ in src.edges], n=src.n)
    elif kind == "tree":
        bundle = instances.gen_random_tree(args.n, args.seed)
    else:
        bundle = instances.gen_grid(args.width, args.height)
    out = bundle.save(args.out)
    result = {"out": str(out), "n": bundle.graph.n, "m": bundle.graph.m, "metadata": bundle.metadata}
    return result, str(out)


def cmd_eval(args):
    g, caps = _load(args.graph, getattr(args, "capacities", None))
    if args.kind == "exact":
        pts = _points(args.vantage)
        value = evaluation.exhaustive_permutation_expected_reveals(g, pts, cap=args.cap)
        exact = counting.expected_reveals(g, pts)
        result = {"vantage_points": pts, "exhaustive": _frac(value), "counting": _frac(exact),
                  "decimal": float(value), "agree": value == exact}
        if value != exact:
            raise CommandError(f"oracle mismatch: {value} != {exact}")
        return result, result["exhaustive"]
    if args.kind == "mc":
        pts = _points(args.vantage)
        mean, se = evaluation.monte_carlo_expected_reveals(g, pts, args.trials, args.seed)
        result = {"vantage_points": pts, "trials": args.trials, "seed": args.seed, "mean": mean,
                  "stderr": None if math.isnan(se) else se}
        return result, f"{mean}"
    if caps is None:
        raise CommandError("eval alphabeta needs capacities (--capacities or a bundle)")
    pts = _points(args.points)
    witness = _points(args.witness) or None
    alpha, beta, opt = evaluation.measure_alpha_beta(
        g, caps, pts, args.k, args.opt_mode, opt_count=args.opt_count, witness=witness
    )
    result = {"k": args.k, "vantage_points": pts, "opt_mode": args.opt_mode, "opt": opt,
              "alpha": _frac(alpha), "beta": _frac(beta), "alpha_decimal": float(alpha),
              "beta_decimal": float(beta)}
    return result, f"{float(alpha)} {float(beta)}"


def _fcheck_one(args):
    g, max_set = args
    masks = evaluation.permutation_reveal_masks(g, cap=g.m)
    checked = 0
    for size in range(1, min(max_set, g.n) + 1):
        for s in combinations(range(g.n), size):
            if counting.expected_reveals(g, s) != evaluation.exhaustive_permutation_expected_reveals(g, s, masks=masks):
                return checked, [list(s), [list(e[:2]) for e in g.edges]]
            checked += 1
    return checked, None


def cmd_oracle(args):
    corpus = instances.small_graph_corpus(args.count, args.seed, args.max_edges)
    work = [(g, args.max_set) for g in corpus]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            outcomes = list(pool.map(_fcheck_one, work))
    else:
        outcomes = [_fcheck_one(w) for w in work]
    failures = [bad for _, bad in outcomes if bad]
    result = {"graphs": len(corpus), "sets_checked": sum(c for c, _ in outcomes),
              "failures": failures[:5], "status": "FAIL" if failures else "PASS"}
    if failures:
        raise CommandError(json.dumps(result))
    return result, "PASS"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bottleneck-discovery", description=__doc__.splitlines()[0])
    parser.add_argument("--quiet", action="store_true", help="print only the headline metric")
    parser.add_argument("--jobs", type=int, default=int(os.environ.get(JOBS_ENV, "1")),
                        help=f"parallel workers for sweeps (default ${JOBS_ENV} or 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="select vantage points")
    solve_sub = solve.add_subparsers(dest="mode", required=True)
    for mode in ("nonadaptive", "tree", "planar"):
        sp = solve_sub.add_parser(mode)
        sp.add_argument("--graph", required=True, help="graph file or bundle directory")
        sp.add_argument("--k", type=int, required=True)
        sp.add_argument("--capacities", help="capacity file for revealed/alpha/beta metrics")
        if mode == "nonadaptive":
            sp.add_argument("--lazy", action="store_true")
        elif mode == "tree":
            sp.add_argument("--alpha", type=int, required=True)
            sp.add_argument("--randomized", action="store_true")
            sp.add_argument("--seed", type=int, default=0)
        else:
            group = sp.add_mutually_exclusive_group(required=True)
            group.add_argument("--grid", help="declared grid shape WxH")
            group.add_argument("--division", help="file of 'vertex_id piece_id' lines")
            sp.add_argument("--r", type=int, help="piece size (default ceil((n/k)^(2/3)))")
        sp.set_defaults(func=cmd_solve)

    adv = sub.add_parser("adversary", help="play the path-family adversary")
    adv.add_argument("--n", type=int, required=True)
    adv.add_argument("--k", type=int, required=True)
    adv.add_argument("--budget", type=int, required=True)
    adv.add_argument("--strategy", required=True, help=", ".join(sorted(adversary.STRATEGIES)))
    adv.add_argument("--seed", type=int, help="seed for random-seeded")
    adv.set_defaults(func=cmd_adversary)

    gen = sub.add_parser("gen", help="generate an instance bundle directory")
    gen_sub = gen.add_subparsers(dest="kind", required=True)
    for kind in ("pathfamily", "randlb", "torus", "vcreduce", "tree", "grid"):
        gp = gen_sub.add_parser(kind)
        gp.add_argument("--out", required=True)
        if kind in ("pathfamily", "randlb", "tree"):
            gp.add_argument("--n", type=int, required=True)
        if kind in ("pathfamily", "randlb"):
            gp.add_argument("--k", type=int, required=True)
        if kind in ("randlb", "torus", "tree"):
            gp.add_argument("--seed", type=int, default=0)
        if kind == "torus":
            gp.add_argument("--side", type=int, required=True)
            gp.add_argument("--chosen", type=int, default=0)
        if kind == "vcreduce":
            gp.add_argument("--graph", required=True, help="graph file; weights are ignored")
        if kind == "grid":
            gp.add_argument("--width", type=int, required=True)
            gp.add_argument("--height", type=int, required=True)
        gp.set_defaults(func=cmd_gen)

    ev = sub.add_parser("eval", help="oracles and measurements")
    ev_sub = ev.add_subparsers(dest="kind", required=True)
    ex = ev_sub.add_parser("exact")
    ex.add_argument("--graph", required=True)
    ex.add_argument("--vantage", required=True, help="comma-separated vertex ids")
    ex.add_argument("--cap", type=int, default=8, help="largest m to enumerate")
    mc = ev_sub.add_parser("mc")
    mc.add_argument("--graph", required=True)
    mc.add_argument("--vantage", required=True)
    mc.add_argument("--trials", type=int, default=10000)
    mc.add_argument("--seed", type=int, default=0)
    ab = ev_sub.add_parser("alphabeta")
    ab.add_argument("--graph", required=True)
    ab.add_argument("--capacities")
    ab.add_argument("--points", required=True)
    ab.add_argument("--k", type=int, required=True)
    ab.add_argument("--opt-mode", default="brute-force", choices=["brute-force", "planted-witness", "supplied"])
    ab.add_argument("--opt-count", type=int)
    ab.add_argument("--witness", help="comma-separated witness set (planted-witness mode)")
    for p in (ex, mc, ab):
        p.set_defaults(func=cmd_eval)

    orc = sub.add_parser("oracle", help="cross-check the counting oracle")
    orc_sub = orc.add_subparsers(dest="kind", required=True)
    fc = orc_sub.add_parser("fcheck")
    fc.add_argument("--count", type=int, default=200)
    fc.add_argument("--seed", type=int, default=0)
    fc.add_argument("--max-edges", type=int, default=7)
    fc.add_argument("--max-set", type=int, default=3)
    fc.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result, headline = args.func(args)
    except (CommandError, GraphFormatError, InvalidGraphError, BudgetExceededError, ValueError,
            adversary.AdversaryError, instances.AuditError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(headline if args.quiet else json.dumps(result, indent=2, default=str))
    return 0


if __name__ == "__main__":
    sys.exit(main())
