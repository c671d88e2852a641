"""Time the full quadruple scans on a random Euclidean sample.

    python3 scripts/bench_delta.py --n 300 --workers 1 8
"""

import argparse
import time
from dataclasses import dataclass, field

from deltatree.generators import random_euclidean
from deltatree.hyperbolicity import delta_four_point, delta_gromov


@dataclass
class BenchConfig:
    n: int = 300
    seed: int = 12
    dim: int = 2
    workers: list[int] = field(default_factory=lambda: [1, 8])


def run(cfg: BenchConfig):
    space = random_euclidean(cfg.n, cfg.seed, cfg.dim)
    warm = random_euclidean(8, 0)
    rows = []
    for name, fn in (("four-point", delta_four_point), ("gromov", delta_gromov)):
        fn(warm)
        results = []
        for w in cfg.workers:
            t0 = time.perf_counter()
            res = fn(space, w)
            rows.append((name, w, time.perf_counter() - t0, res))
            results.append(repr(res))
        if len(set(results)) != 1:
            raise SystemExit(f"{name}: results differ across worker counts")
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=BenchConfig.n)
    ap.add_argument("--seed", type=int, default=BenchConfig.seed)
    ap.add_argument("--dim", type=int, default=BenchConfig.dim)
    ap.add_argument("--workers", type=int, nargs="+", default=[1, 8])
    cfg = BenchConfig(**vars(ap.parse_args()))
    subsets = cfg.n * (cfg.n - 1) * (cfg.n - 2) * (cfg.n - 3) // 24
    print(f"n={cfg.n}: {subsets} subsets")
    for name, w, secs, res in run(cfg):
        print(f"{name:>10}  workers={w:<2}  {secs:7.2f}s  delta={res.delta!r}  witness={res.quadruple}")


if __name__ == "__main__":
    main()
