"""Cubic root of F_t(n) against the upper and lower bounds, out to the proved regime.

n runs geometrically from t + 1 to a multiple of 400 t^6; both n and n + 1 are
listed so the divisible and non-divisible cases sit side by side.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

import numpy as np

from k2t_spectral.search import fmt
from k2t_spectral.spectral import bound_lower, bound_upper, ft_mu_exact, lower_in_range, theorem2_min_n


@dataclass
class TableConfig:
    t_min: int = 3
    t_max: int = 6
    points: int = 12
    reach: float = 4.0  # largest n is reach * 400 t^6


def rows(cfg: TableConfig):
    for t in range(cfg.t_min, cfg.t_max + 1):
        top = int(cfg.reach * theorem2_min_n(t))
        for base in sorted({int(x) for x in np.geomspace(t + 1, top, cfg.points)}):
            n0 = base - (base - 1) % t  # n0 - 1 divisible by t
            for n in (n0, n0 + 1):
                if n <= t:
                    continue
                mu = ft_mu_exact(t, n)
                up = bound_upper(t, n)
                lo = bound_lower(t, n, allow_out_of_range=True)
                yield (t, n, (n - 1) % t, fmt(mu), fmt(up - mu), fmt(mu - lo), str(lower_in_range(t, n)).lower())


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--t-min", type=int, default=TableConfig.t_min)
    p.add_argument("--t-max", type=int, default=TableConfig.t_max)
    p.add_argument("--points", type=int, default=TableConfig.points)
    p.add_argument("--reach", type=float, default=TableConfig.reach)
    args = p.parse_args()
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(("t", "n", "s", "mu", "upper_minus_mu", "mu_minus_lower", "lower_in_range"))
    w.writerows(rows(TableConfig(args.t_min, args.t_max, args.points, args.reach)))


if __name__ == "__main__":
    main()
