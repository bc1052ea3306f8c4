"""The extremal family F_t(n) = K_1 v (p K_t + K_s), n - 1 = p t + s."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, complete, components, join, union_all


@dataclass(frozen=True)
class FtParams:
    t: int
    n: int
    p: int
    s: int


def split_params(t: int, n: int) -> FtParams:
    if t < 2:
        raise ValueError(f"t must be >= 2, got {t}")
    if n <= t:
        raise ValueError(f"F_t(n) needs n >= t + 1, got t={t}, n={n}")
    p, s = divmod(n - 1, t)
    return FtParams(t, n, p, s)


def build_F(t: int, n: int) -> Graph:
    """Hub 0, then the K_t blocks in order, then the K_s block.

    For t = 2 and even n the trailing K_1 block is the pendant vertex hung on
    the hub of the friendship graph F_2(n - 1).
    """
    if t == 2 and n < 3:
        raise ValueError(f"F_2(n) needs n >= 3, got {n}")
    prm = split_params(t, n)
    blocks = [complete(t)] * prm.p
    if prm.s:
        blocks.append(complete(prm.s))
    return join(complete(1), union_all(blocks))


def dominating_vertices(g: Graph) -> list[int]:
    return [v for v in range(g.n) if g.degree(v) == g.n - 1]


def _is_clique(g: Graph, comp: list[int]) -> bool:
    k = len(comp)
    return all(g.degree(v) >= k - 1 and all(g.has_edge(v, u) for u in comp if u != v) for v in comp)


def is_Ft(g: Graph, t: int) -> bool:
    """Structural recognition: some dominating vertex whose removal leaves p K_t + K_s."""
    try:
        prm = split_params(t, g.n)
    except ValueError:
        return False
    want = sorted([t] * prm.p + ([prm.s] if prm.s else []))
    for hub in dominating_vertices(g):
        rest = g.delete_vertex(hub)
        comps = components(rest)
        if sorted(len(c) for c in comps) == want and all(_is_clique(rest, c) for c in comps):
            return True
    return False
