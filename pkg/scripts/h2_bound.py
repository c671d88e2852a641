"""Largest delta seen in Poincare disk samples, against the 3 * (1/2) log 3 bound.

    python3 scripts/h2_bound.py --samples 200 --n 8
"""

import argparse
import math
from dataclasses import dataclass

import numpy as np

from deltatree.generators import poincare_space, sample_poincare
from deltatree.hyperbolicity import delta_gromov


@dataclass
class H2Config:
    samples: int = 200
    n: int = 8
    seed: int = 0
    radii: tuple[float, ...] = (0.5, 0.8, 0.9, 0.95, 0.99)


def sweep(cfg: H2Config):
    for k, radius in enumerate(cfg.radii):
        deltas = np.array([
            delta_gromov(poincare_space(sample_poincare(cfg.n, cfg.seed + 10_000 * k + s, radius))).delta
            for s in range(cfg.samples)
        ])
        yield radius, deltas


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=H2Config.samples)
    ap.add_argument("--n", type=int, default=H2Config.n)
    ap.add_argument("--seed", type=int, default=H2Config.seed)
    cfg = H2Config(**vars(ap.parse_args()))
    thin = 0.5 * math.log(3)
    print(f"bound 3 * {thin:.4f} = {3 * thin:.4f}")
    print("max_radius   mean     max    max/thin")
    for radius, d in sweep(cfg):
        print(f"{radius:10.2f} {d.mean():7.4f} {d.max():7.4f} {d.max() / thin:8.3f}")


if __name__ == "__main__":
    main()
