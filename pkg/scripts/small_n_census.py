"""Exhaustive census: argmax mu over connected K_{2,t}-minor-free graphs for small n.

Writes one CSV row per argmax graph with its gaps to both upper bounds.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import dataclass

from k2t_spectral.graph import parse_graph6
from k2t_spectral.search import CSV_COLUMNS, enumerate_connected, exhaustive_max
from k2t_spectral.verify import lemma1_hub_check


@dataclass
class CensusConfig:
    t_values: tuple[int, ...] = (2, 3, 4)
    n_min: int = 3
    n_max: int = 8


def run(cfg: CensusConfig, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_COLUMNS + ("hub_is_top_entry",))
    for n in range(cfg.n_min, cfg.n_max + 1):
        graphs = list(enumerate_connected(n))
        for t in cfg.t_values:
            tic = time.perf_counter()
            for rec in exhaustive_max(graphs, t):
                hub = lemma1_hub_check(parse_graph6(rec.graph6), t)
                w.writerow(rec.csv_row() + ["true" if hub else "false"])
            print(f"n={n} t={t}: {len(graphs)} graphs in {time.perf_counter() - tic:.1f}s", file=sys.stderr)


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--t", type=int, nargs="+", default=list(CensusConfig.t_values))
    p.add_argument("--n-min", type=int, default=CensusConfig.n_min)
    p.add_argument("--n-max", type=int, default=CensusConfig.n_max)
    args = p.parse_args()
    run(CensusConfig(tuple(args.t), args.n_min, args.n_max), sys.stdout)


if __name__ == "__main__":
    main()
