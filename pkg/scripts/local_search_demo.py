"""Hill-climb from several start graphs and report where each run ends.

Prints one JSON line per run: start kind, steps taken, final mu, whether the
end point is F_t(n), and the move kinds used.
"""

from __future__ import annotations

import argparse
import json
import random
from dataclasses import dataclass, field

from k2t_spectral.extremal import build_F
from k2t_spectral.graph import Graph, complete, join, path, star
from k2t_spectral.minor import k2t_minor_test
from k2t_spectral.search import local_search
from k2t_spectral.spectral import ft_mu_exact


@dataclass
class DemoConfig:
    t: int = 3
    n: int = 13
    trees: int = 5
    seed: int = 0
    max_steps: int = 200
    starts: list[str] = field(default_factory=lambda: ["star", "fan", "path", "ft"])


def start_graphs(cfg: DemoConfig):
    fixed = {
        "star": star(cfg.n),
        "fan": join(complete(1), path(cfg.n - 1)),
        "path": path(cfg.n),
        "ft": build_F(cfg.t, cfg.n),
    }
    for kind in cfg.starts:
        yield kind, fixed[kind]
    rng = random.Random(cfg.seed)
    for i in range(cfg.trees):
        yield f"tree{i}", Graph.from_edges(cfg.n, [(v, rng.randrange(v)) for v in range(1, cfg.n)])


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--t", type=int, default=DemoConfig.t)
    p.add_argument("--n", type=int, default=DemoConfig.n)
    p.add_argument("--trees", type=int, default=DemoConfig.trees)
    p.add_argument("--seed", type=int, default=DemoConfig.seed)
    p.add_argument("--max-steps", type=int, default=DemoConfig.max_steps)
    args = p.parse_args()
    cfg = DemoConfig(args.t, args.n, args.trees, args.seed, args.max_steps)
    target = ft_mu_exact(cfg.t, cfg.n)
    for kind, g in start_graphs(cfg):
        if k2t_minor_test(g, cfg.t).present:
            print(json.dumps({"start": kind, "skipped": "start contains the minor"}))
            continue
        rec = local_search(cfg.t, cfg.n, g, cfg.max_steps)
        print(json.dumps({
            "start": kind,
            "steps": len(rec.move_trace),
            "mu": float(f"{rec.mu:.12g}"),
            "mu_Ft": float(f"{target:.12g}"),
            "is_ft": rec.is_ft,
            "moves": sorted({m["kind"] for m in rec.move_trace}),
            "graph6": rec.graph6,
        }))


if __name__ == "__main__":
    main()
