"""Exhaustive and local search for K_{2,t}-minor-free graphs of large spectral radius."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .extremal import is_Ft
from .graph import Graph, canonical_code, canonical_graph, components, write_graph6
from .minor import k2t_minor_test
from .spectral import bound_upper, bound_ysh, spectral_radius

MAX_BUILTIN_N = 8
TIE_TOL = 1e-10
IMPROVE_EPS = 1e-9

CSV_COLUMNS = ("graph6", "n", "t", "mu", "gap_upper", "gap_ysh", "is_ft")


def fmt(x: float) -> str:
    return f"{x:.12g}"


@dataclass(frozen=True)
class Move:
    kind: str
    removed: tuple[tuple[int, int], ...]
    added: tuple[tuple[int, int], ...]

    def to_dict(self) -> dict:
        return {"kind": self.kind, "removed": [list(e) for e in self.removed], "added": [list(e) for e in self.added]}


@dataclass
class SearchRecord:
    graph6: str
    n: int
    t: int
    mu: float
    gap_upper: float
    gap_ysh: Optional[float]
    is_ft: bool
    move_trace: Optional[list[dict]] = field(default=None)

    @property
    def violated(self) -> bool:
        """mu above the upper bound (or, for t = 3, above the n-7/4 bound)."""
        return self.gap_upper < -1e-9 or (self.gap_ysh is not None and self.gap_ysh < -1e-9)

    def csv_row(self) -> list[str]:
        gy = "" if self.gap_ysh is None else fmt(self.gap_ysh)
        return [self.graph6, str(self.n), str(self.t), fmt(self.mu), fmt(self.gap_upper), gy, "true" if self.is_ft else "false"]

    def to_json(self) -> dict:
        out = asdict(self)
        for key in ("mu", "gap_upper", "gap_ysh"):
            if out[key] is not None:
                out[key] = float(fmt(out[key]))
        return out


def make_record(g: Graph, t: int, mu: float, trace: Optional[list[dict]] = None) -> SearchRecord:
    return SearchRecord(
        graph6=write_graph6(g),
        n=g.n,
        t=t,
        mu=mu,
        gap_upper=bound_upper(t, g.n) - mu,
        gap_ysh=bound_ysh(g.n) - mu if t == 3 and g.n >= 2 else None,
        is_ft=is_Ft(g, t),
        move_trace=trace,
    )


# -- enumeration -------------------------------------------------------

@lru_cache(maxsize=None)
def _classes(n: int, connected: bool) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph.empty(1),)
    if n == 0:
        return () if connected else (Graph.empty(0),)
    found: dict[tuple[int, int], Graph] = {}
    first = 1 if connected else 0
    for parent in _classes(n - 1, connected):
        for nbrs in range(first, 1 << (n - 1)):
            rows = list(parent.adj)
            for v in range(n - 1):
                if nbrs >> v & 1:
                    rows[v] |= 1 << (n - 1)
            g = Graph(n, tuple(rows) + (nbrs,))
            key = canonical_code(g)
            if key not in found:
                found[key] = canonical_graph(g)
    return tuple(found[k] for k in sorted(found))


def enumerate_connected(n: int) -> Iterable[Graph]:
    """One representative per isomorphism class of connected graphs on ``n`` vertices.

    Every connected graph has a vertex whose removal leaves it connected, so
    the classes on ``n`` vertices all arise by attaching a new vertex to a
    connected class on ``n - 1`` vertices; duplicates are rejected by
    canonical code.
    """
    if n > MAX_BUILTIN_N:
        raise ValueError(f"built-in generator stops at n = {MAX_BUILTIN_N}; pipe larger graphs in as graph6")
    if n < 1:
        raise ValueError("n must be >= 1")
    return iter(_classes(n, True))


def enumerate_graphs(n: int) -> Iterable[Graph]:
    """All isomorphism classes on ``n`` vertices, connected or not."""
    if n > MAX_BUILTIN_N:
        raise ValueError(f"built-in generator stops at n = {MAX_BUILTIN_N}; pipe larger graphs in as graph6")
    return iter(_classes(n, False))


# -- exhaustive maximisation ---------------------------------------------

def merge_records(groups: Iterable[Sequence[SearchRecord]], tie_tol: float = TIE_TOL) -> list[SearchRecord]:
    pool = [r for group in groups for r in group]
    if not pool:
        return []
    top = max(r.mu for r in pool)
    keep = {r.graph6: r for r in pool if r.mu >= top - tie_tol}
    return [keep[k] for k in sorted(keep)]


def exhaustive_max(source: Iterable[Graph], t: int, tie_tol: float = TIE_TOL) -> list[SearchRecord]:
    """All K_{2,t}-minor-free graphs of the stream attaining the largest mu (within ``tie_tol``)."""
    best: list[SearchRecord] = []
    top = -math.inf
    n = None
    for g in source:
        if n is None:
            n = g.n
        elif g.n != n:
            raise ValueError(f"stream mixes orders {n} and {g.n}")
        if k2t_minor_test(g, t).present:
            continue
        mu = spectral_radius(g).mu
        if mu < top - tie_tol:
            continue
        rec = make_record(g, t, mu)
        if mu > top:
            top = mu
            best = [r for r in best if r.mu >= top - tie_tol]
        best.append(rec)
    return merge_records([best], tie_tol)


def _worker(args: tuple[list[str], int]) -> list[SearchRecord]:
    from .graph import parse_graph6

    lines, t = args
    return exhaustive_max((parse_graph6(s) for s in lines), t)


def exhaustive_max_parallel(source: Iterable[Graph], t: int, jobs: int) -> list[SearchRecord]:
    """Partition the stream over ``jobs`` processes and merge by max mu with tie union."""
    pool = list(source)
    orders = sorted({g.n for g in pool})
    if len(orders) > 1:
        raise ValueError(f"stream mixes orders {orders}")
    graphs = [write_graph6(g) for g in pool]
    if jobs <= 1 or len(graphs) < 2:
        return _worker((graphs, t))
    chunks = [graphs[i::jobs] for i in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        parts = list(ex.map(_worker, [(c, t) for c in chunks]))
    return merge_records(parts)


# -- moves ---------------------------------------------------------------

def lemma_rewire(g: Graph, v: int, hub: int) -> Optional[Move]:
    """Strip every edge at ``v`` and join ``v`` to ``hub``."""
    removed = tuple(sorted((min(v, u), max(v, u)) for u in g.neighbors(v) if u != hub))
    added = () if g.has_edge(v, hub) else ((min(v, hub), max(v, hub)),)
    if not removed and not added:
        return None
    return Move("lemma_rewire", removed, added)


def path_rotation(path: Sequence[int]) -> Move:
    """Rotation that splits a triangle off the middle of a path of order h >= 4.

    With 1-based positions P[1..h] and s = floor(h / 2) (h = 2s or 2s + 1) it
    removes P[s-1]P[s] and P[s+2]P[s+3] and adds P[s]P[s+2] and P[s-1]P[s+3],
    leaving a path of order h - 3 and a triangle.  For h = 4 it removes P[1]P[2]
    and adds P[2]P[4].
    """
    h = len(path)
    P = (None,) + tuple(path)

    def e(a, b):
        return (min(P[a], P[b]), max(P[a], P[b]))

    if h == 4:
        return Move("rot_h4", (e(1, 2),), (e(2, 4),))
    if h < 4:
        raise ValueError(f"rotation needs a path of order >= 4, got {h}")
    s = h // 2
    kind = "rot_odd" if h % 2 else "rot_even"
    return Move(kind, (e(s - 1, s), e(s + 2, s + 3)), (e(s, s + 2), e(s - 1, s + 3)))


def apply_move(g: Graph, w: Sequence[float], m: Move) -> tuple[Graph, float]:
    """Rewired graph and the exact change of ``edge_weight_sum`` under ``w``."""
    if len(w) != g.n:
        raise ValueError("weight vector length does not match graph order")
    for u, v in m.removed:
        if not g.has_edge(u, v):
            raise ValueError(f"move removes non-edge {(u, v)}")
    for u, v in m.added:
        if u == v or g.has_edge(u, v):
            raise ValueError(f"move adds existing edge or loop {(u, v)}")
    if len(set(m.added)) != len(m.added) or set(m.added) & set(m.removed):
        raise ValueError("move adds an edge twice or re-adds a removed edge")
    gain = math.fsum(float(w[u]) * float(w[v]) for u, v in m.added)
    loss = math.fsum(float(w[u]) * float(w[v]) for u, v in m.removed)
    return g.with_edges(m.removed, m.added), gain - loss


def path_order(g: Graph, comp: Sequence[int]) -> Optional[list[int]]:
    """Vertices of ``comp`` in path order if ``g[comp]`` is a path, else None."""
    cset = set(comp)
    inner = {v: [u for u in g.neighbors(v) if u in cset] for v in comp}
    if len(comp) == 1:
        return list(comp)
    if any(len(nb) > 2 for nb in inner.values()) or sum(len(nb) for nb in inner.values()) != 2 * (len(comp) - 1):
        return None
    ends = [v for v in comp if len(inner[v]) == 1]
    if len(ends) != 2:
        return None
    order = [min(ends)]
    prev = None
    while len(order) < len(comp):
        cur = order[-1]
        nxt = [u for u in inner[cur] if u != prev]
        prev = cur
        order.append(nxt[0])
    return order


def anchor_vertex(g: Graph, vector: Optional[np.ndarray]) -> int:
    """Vertex with the largest Perron entry (lowest index among near-ties), else max degree."""
    if vector is not None:
        top = float(vector.max())
        return int(np.flatnonzero(vector >= top - 1e-9)[0])
    degs = g.degrees()
    return degs.index(max(degs))


def candidate_moves(g: Graph, hub: int) -> list[Move]:
    moves: list[Move] = []
    for v in range(g.n):
        if v != hub:
            m = lemma_rewire(g, v, hub)
            if m is not None:
                moves.append(m)
    rest = [v for v in range(g.n) if v != hub]
    sub = g.induced(rest)
    for comp in components(sub):
        order = path_order(sub, comp)
        if order is None or len(order) < 4:
            continue
        order = [rest[v] for v in order]
        fwd, back = path_rotation(order), path_rotation(order[::-1])
        moves.append(fwd)
        if back != fwd:
            moves.append(back)
    for e in g.non_edges():
        moves.append(Move("add_edge", (), (e,)))
    return moves


def non_triangle_orders(g: Graph, hub: int) -> list[int]:
    """Orders of the components of g - hub that are not triangles."""
    rest = [v for v in range(g.n) if v != hub]
    sub = g.induced(rest)
    out = []
    for comp in components(sub):
        if not (len(comp) == 3 and sub.induced(comp).num_edges() == 3):
            out.append(len(comp))
    return sorted(out)


def local_search(t: int, n: int, start: Graph, max_steps: int = 1000) -> SearchRecord:
    """Hill-climb on mu using the rewiring and rotation moves plus edge additions.

    Each step evaluates every candidate exactly, then applies the best strictly
    improving candidate that is still K_{2,t}-minor-free.
    """
    if start.n != n:
        raise ValueError(f"start graph has {start.n} vertices, expected {n}")
    if k2t_minor_test(start, t).present:
        raise ValueError("start graph already contains a K_{2,t} minor")
    g = start
    res = spectral_radius(g)
    mu = res.mu
    trace: list[dict] = []
    for _ in range(max_steps):
        hub = anchor_vertex(g, res.vector)
        scored = []
        for idx, m in enumerate(candidate_moves(g, hub)):
            cand = g.with_edges(m.removed, m.added)
            cmu = spectral_radius(cand).mu
            if cmu > mu + IMPROVE_EPS:
                scored.append((-cmu, idx, m, cand))
        scored.sort(key=lambda item: (item[0], item[1]))
        chosen = None
        for neg_mu, _, m, cand in scored:
            if not k2t_minor_test(cand, t).present:
                chosen = (m, cand)
                break
        if chosen is None:
            break
        m, g = chosen
        res = spectral_radius(g)
        mu = res.mu
        step = m.to_dict()
        step["mu"] = float(fmt(mu))
        trace.append(step)
    return make_record(g, t, mu, trace)
