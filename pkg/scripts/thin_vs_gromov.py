"""Thin-triangle delta against the Gromov-product delta on cycles and random graphs.

    python3 scripts/thin_vs_gromov.py --resolution 0.05
"""

import argparse
from dataclasses import dataclass

from deltatree.generators import cycle_graph, random_connected_graph
from deltatree.geodesic_graph import delta_thin_exact, max_tripod_spread, thin_relations


@dataclass
class ThinConfig:
    resolution: float = 0.05
    cycles: tuple[int, ...] = (3, 4, 5, 6, 7, 8, 9, 10)
    random_graphs: int = 5
    graph_size: int = 10
    seed: int = 0
    subdivisions: int = 0


def graphs(cfg: ThinConfig):
    for n in cfg.cycles:
        yield f"C{n}", cycle_graph(n)
    for k in range(cfg.random_graphs):
        yield f"G{cfg.seed + k}", random_connected_graph(cfg.graph_size, cfg.seed + k, 0.25)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--resolution", type=float, default=ThinConfig.resolution)
    ap.add_argument("--subdivisions", type=int, default=0)
    ap.add_argument("--seed", type=int, default=0)
    cfg = ThinConfig(**vars(ap.parse_args()))
    print(f"{'graph':>6} {'gromov':>7} {'thin':>7} {'exact':>7} {'tripod':>7}  checks")
    for name, g in graphs(cfg):
        checks, d3, thin = thin_relations(g, cfg.resolution, subdivisions=cfg.subdivisions)
        spread, _ = max_tripod_spread(g)
        status = " ".join(f"{c.name}={'ok' if c.holds else 'FAIL'}" for c in checks)
        print(f"{name:>6} {d3.delta:7.3f} {thin.delta:7.3f} {delta_thin_exact(g):7.3f} {spread:7.3f}  {status}")


if __name__ == "__main__":
    main()
