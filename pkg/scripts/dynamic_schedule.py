"""Replay a random update stream under both rebuild policies.

Compares the spread-out background rebuild with the stop-the-world
(``amortized``) variant: per-update latency percentiles, rebuild count,
period and the largest backlog of pending updates.

    python3 scripts/dynamic_schedule.py --n 200 --m 12000 --updates 1000
"""
from __future__ import annotations

import argparse
import random
import statistics
import time
from dataclasses import asdict, dataclass, fields

from ftdfs.fault_dynamic import DynamicDFS
from ftdfs.fileio import update_from_tuple
from ftdfs.graph_core import NO_FAULTS, ROOT
from ftdfs.verify_oracle import check_dfs_tree, random_graph, random_updates


@dataclass
class Config:
    n: int = 200
    m: int = 12000
    updates: int = 1000
    seed: int = 0
    check_every: int = 0


def replay(cfg: Config, amortized: bool) -> dict:
    rng = random.Random(cfg.seed)
    g = random_graph(rng, cfg.n, cfg.m)
    stream = [update_from_tuple(t) for t in random_updates(rng, g, cfg.updates)]
    state = DynamicDFS(g, amortized=amortized)
    lat = []
    for i, up in enumerate(stream, 1):
        t0 = time.perf_counter()
        tree = state.step(up)
        lat.append(time.perf_counter() - t0)
        if cfg.check_every and i % cfg.check_every == 0:
            assert check_dfs_tree(state.graph, NO_FAULTS, tree, ROOT).ok
    q = statistics.quantiles(lat, n=100, method="inclusive")
    return {
        "policy": "amortized" if amortized else "background",
        "period": state.period,
        "rebuilds": state.rebuilds,
        "max_pending": state.max_pending,
        "p50_ms": round(1e3 * q[49], 3),
        "p99_ms": round(1e3 * q[98], 3),
        "max_ms": round(1e3 * max(lat), 3),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for fld in fields(Config):
        ap.add_argument(f"--{fld.name.replace('_', '-')}", type=int, default=fld.default)
    cfg = Config(**vars(ap.parse_args()))
    print(asdict(cfg))
    for amortized in (False, True):
        print(" ".join(f"{k}={v}" for k, v in replay(cfg, amortized).items()))


if __name__ == "__main__":
    main()
