"""Preprocessing time and structure sizes as the graph grows.

    python3 scripts/build_scaling.py --sizes 1000 10000 100000 --density 5
"""
from __future__ import annotations

import argparse
import math
import random
import time
from dataclasses import dataclass, field

from ftdfs.preprocess import preprocess
from ftdfs.verify_oracle import random_graph


@dataclass
class Config:
    sizes: list[int] = field(default_factory=lambda: [1_000, 10_000, 100_000])
    density: int = 5
    seed: int = 0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    d = Config()
    ap.add_argument("--sizes", type=int, nargs="+", default=d.sizes)
    ap.add_argument("--density", type=int, default=d.density)
    ap.add_argument("--seed", type=int, default=d.seed)
    cfg = Config(**vars(ap.parse_args()))
    print("n m augmented_m height floor_log2 D_total overlay overlay/m seconds us/edge")
    for n in cfg.sizes:
        g = random_graph(random.Random(cfg.seed), n, cfg.density * n)
        t0 = time.perf_counter()
        pre = preprocess(g)
        secs = time.perf_counter() - t0
        m = g.edge_count
        print(
            f"{n} {cfg.density * n} {m} {pre.shallow.height} {math.floor(math.log2(g.n))} "
            f"{pre.index.total} {pre.overlay.size} {pre.overlay.size / m:.3f} {secs:.3f} {1e6 * secs / m:.2f}"
        )


if __name__ == "__main__":
    main()
