"""Command-line entry point.

Exit codes: 0 on success, 1 when an emitted tree fails its self-check,
2 on bad input.
"""
from __future__ import annotations

import argparse
import csv
import math
import random
import statistics
import sys
import time
from contextlib import nullcontext
from typing import Optional, Sequence

from .errors import InvalidInput, InvalidQuery
from .fault_dynamic import DynamicDFS, fault_tolerant_session
from .fileio import (
    format_tree,
    load_edge_list,
    load_snapshot,
    parse_faults,
    parse_tree,
    read_updates,
    save_snapshot,
)
from .graph_core import NO_FAULTS, ROOT
from .preprocess import preprocess
from .reroot_engine import run_reroot
from .verify_oracle import PROFILES, brute_force_dfs, check_dfs_tree, count_report, draw_faults, random_graph

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2


class SelfCheckFailed(Exception):
    pass


def _checked(g, faults, tree, root) -> None:
    verdict = check_dfs_tree(g, faults, tree, root)
    if not verdict.ok:
        raise SelfCheckFailed(f"self-check failed: {verdict.violations[:5]}")


def cmd_build(args, out) -> int:
    g = load_edge_list(args.graph)
    t0 = time.perf_counter()
    pre = preprocess(g)
    elapsed = time.perf_counter() - t0
    if args.out:
        save_snapshot(pre, args.out)
    print(
        f"n={g.n - 1} m={g.edge_count - (g.n - 1)} augmented_m={g.edge_count} "
        f"d={pre.shallow.height} paths={len(pre.shallow)} "
        f"D_total={pre.index.total} overlay={pre.overlay.size} seconds={elapsed:.3f}",
        file=out,
    )
    return EXIT_OK


def cmd_query(args, out) -> int:
    pre = load_snapshot(args.snapshot)
    g = pre.graph
    faults = parse_faults(args.faults or "", g)
    root = ROOT if args.reroot is None else args.reroot
    if not 0 <= root < g.n:
        raise InvalidInput(f"unknown vertex {root}")
    tree, session = run_reroot(pre, root, faults)
    _checked(g, faults, tree, root)
    if args.emit in ("tree", "both"):
        out.write(format_tree(tree, with_dfn=args.dfn))
    if args.emit in ("counters", "both"):
        rep = count_report(session)
        n = g.n
        d = rep["k_prime"] + math.floor(math.log2(n))
        rep.pop("nodes_entered")
        rep["q_bound"] = round(n * d * (math.log2(n) + 1), 1)
        print(" ".join(f"{k}={v}" for k, v in rep.items()), file=out)
    return EXIT_OK


def cmd_dynamic(args, out) -> int:
    pre = load_snapshot(args.snapshot)
    state = DynamicDFS(pre.graph, amortized=args.amortized)
    q_calls: list[int] = []
    count = 0
    with open(args.stream) as fh:
        for no, up in read_updates(fh):
            try:
                tree = state.step(up)
            except InvalidInput as exc:
                raise InvalidInput(f"line {no}: {exc}") from None
            count += 1
            q_calls.append(state.session.q_calls)
            if args.emit_every and count % args.emit_every == 0:
                _checked(state.graph, NO_FAULTS, tree, ROOT)
                print(f"# after update {count} (line {no})", file=out)
                out.write(format_tree(tree))
    if count:
        _checked(state.graph, NO_FAULTS, state.tree, ROOT)
    pct = statistics.quantiles(q_calls, n=100, method="inclusive") if len(q_calls) > 1 else q_calls * 99
    summary = {
        "updates": count,
        "rebuilds": state.rebuilds,
        "period": state.period,
        "max_pending": state.max_pending,
    }
    if q_calls:
        summary.update(q_p50=pct[49], q_p90=pct[89], q_p99=pct[98], q_max=max(q_calls))
    print("# summary " + " ".join(f"{k}={v}" for k, v in summary.items()), file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    g = load_edge_list(args.graph)
    faults = parse_faults(args.faults or "", g)
    with open(args.tree) as fh:
        parent = parse_tree(fh.read(), g.n, args.root)
    if args.root != ROOT and parent[ROOT] < 0:
        parent[ROOT] = args.root
    verdict = check_dfs_tree(g, faults, parent, args.root)
    for kind, witness in verdict.violations:
        print(f"{kind} {witness}", file=out)
    print("ok" if verdict.ok else f"violations={len(verdict.violations)}", file=out)
    return EXIT_OK if verdict.ok else EXIT_CHECK


BENCH_FIELDS = ["trial", "profile", "n", "m", "k", "k_prime", "d", "q_calls", "wall_time", "static_dfs_time"]


def cmd_bench(args, out) -> int:
    rng = random.Random(args.seed)
    if args.graph:
        base = load_edge_list(args.graph)
        pre = preprocess(base)
    with open(args.csv, "w", newline="") if args.csv else nullcontext(out) as fh:
        w = csv.DictWriter(fh, fieldnames=BENCH_FIELDS)
        w.writeheader()
        for trial in range(args.trials):
            if not args.graph:
                g = random_graph(rng, args.n, args.m)
                pre = preprocess(g)
            g = pre.graph
            faults = draw_faults(rng, g, args.k, args.faults_profile)
            t0 = time.perf_counter()
            tree, s = fault_tolerant_session(pre, faults)
            wall = time.perf_counter() - t0
            t0 = time.perf_counter()
            brute_force_dfs(g, ROOT, faults)
            base_t = time.perf_counter() - t0
            _checked(g, faults, tree, ROOT)
            w.writerow({
                "trial": trial,
                "profile": args.faults_profile,
                "n": g.n - 1,
                "m": g.edge_count - (g.n - 1),
                "k": faults.k,
                "k_prime": s.k_prime,
                "d": s.k_prime + math.floor(math.log2(g.n)),
                "q_calls": s.q_calls,
                "wall_time": f"{wall:.6f}",
                "static_dfs_time": f"{base_t:.6f}",
            })
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ftdfs", description="DFS trees under faults and updates")
    sub = ap.add_subparsers(dest="cmd", required=True)

    b = sub.add_parser("build", help="preprocess an edge list into a snapshot")
    b.add_argument("--graph", required=True)
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    q = sub.add_parser("query", help="reroot and/or fault query against a snapshot")
    q.add_argument("--snapshot", required=True)
    q.add_argument("--reroot", type=int)
    q.add_argument("--faults", default="")
    q.add_argument("--emit", choices=["tree", "counters", "both"], default="tree")
    q.add_argument("--dfn", action="store_true", help="add a dfn column to tree output")
    q.set_defaults(func=cmd_query)

    d = sub.add_parser("dynamic", help="replay an update stream")
    d.add_argument("--snapshot", required=True)
    d.add_argument("--stream", required=True)
    d.add_argument("--emit-every", type=int, default=0)
    d.add_argument("--amortized", action="store_true")
    d.set_defaults(func=cmd_dynamic)

    v = sub.add_parser("verify", help="check a tree file against a graph")
    v.add_argument("--graph", required=True)
    v.add_argument("--tree", required=True)
    v.add_argument("--root", type=int, default=ROOT)
    v.add_argument("--faults", default="")
    v.set_defaults(func=cmd_verify)

    be = sub.add_parser("bench", help="fault-query counters per trial as CSV")
    be.add_argument("--graph")
    be.add_argument("--n", type=int, default=1024)
    be.add_argument("--m", type=int, default=4096)
    be.add_argument("--k", type=int, default=16)
    be.add_argument("--faults-profile", choices=PROFILES, default="uniform")
    be.add_argument("--trials", type=int, default=10)
    be.add_argument("--seed", type=int, default=0)
    be.add_argument("--csv")
    be.set_defaults(func=cmd_bench)
    return ap


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except SelfCheckFailed as exc:
        print(exc, file=sys.stderr)
        return EXIT_CHECK
    except (InvalidInput, InvalidQuery, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
