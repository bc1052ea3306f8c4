"""Per-graph audit of the inequalities behind the K_{2,t}-minor spectral bounds.

Check ids:
  C1  two-walk count       |N(u) & N(v)| <= t-1 for all u != v
  C2  degree sum           d(u) + d(v1) <= n + t - 1, v1 = max-degree vertex
  C3  degree lower bound   d(u) >= mu^2 + t - 1 - (t-1) sqrt(n) / x_u
  C4  entry bound          x_u <= 2(t-1) / sqrt(n) away from the top Perron entry
  C5  edge density         2|E| <= (t+1)(n-1)
  C6  quadratic relation   mu (mu - t + 1) <= n - 1
  C7  component edge cap   |E(H)| <= |V(H)| + t(t-3)/2 for components H of g - v1
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Optional

from .extremal import dominating_vertices
from .graph import Graph, components, max_common_neighbors
from .minor import k1t_minor_test, k2t_minor_test, k2t_subgraph_test
from .search import anchor_vertex
from .spectral import spectral_radius

SLACK = 1e-7


@dataclass(frozen=True)
class CheckResult:
    id: str
    applicable: bool
    passed: bool
    lhs: Optional[float]
    rhs: Optional[float]
    detail: str


@dataclass(frozen=True)
class AuditReport:
    graph6: str
    t: int
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks if c.applicable)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.applicable and not c.passed]

    def to_jsonl(self) -> str:
        lines = []
        for c in self.checks:
            row = {"graph6": self.graph6, "t": self.t, **asdict(c)}
            for key in ("lhs", "rhs"):
                if row[key] is not None:
                    row[key] = float(f"{row[key]:.12g}")
            lines.append(json.dumps(row, sort_keys=False))
        return "\n".join(lines)

    def table(self) -> str:
        out = [f"audit {self.graph6} t={self.t}", f"{'check':<6}{'status':<8}{'lhs':>20}{'rhs':>20}  detail"]
        for c in self.checks:
            status = "n/a" if not c.applicable else ("pass" if c.passed else "FAIL")
            lhs = "" if c.lhs is None else f"{c.lhs:.12g}"
            rhs = "" if c.rhs is None else f"{c.rhs:.12g}"
            out.append(f"{c.id:<6}{status:<8}{lhs:>20}{rhs:>20}  {c.detail}")
        return "\n".join(out)


def _skip(cid: str, why: str) -> CheckResult:
    return CheckResult(cid, False, False, None, None, why)


def _check(cid: str, lhs: float, rhs: float, ok: bool, detail: str) -> CheckResult:
    return CheckResult(cid, True, bool(ok), float(lhs), float(rhs), detail)


def max_degree_vertex(g: Graph) -> int:
    degs = g.degrees()
    return degs.index(max(degs))


def audit(g: Graph, t: int) -> AuditReport:
    from .graph import write_graph6

    n = g.n
    if n == 0:
        raise ValueError("cannot audit the empty graph")
    connected = g.is_connected()
    sub_free = not k2t_subgraph_test(g, t)
    minor_free = not k2t_minor_test(g, t).present
    res = spectral_radius(g)
    mu = res.mu
    x = res.vector if connected else None
    degs = g.degrees()
    v1 = max_degree_vertex(g)
    doms = dominating_vertices(g) if n >= 2 else []
    checks: list[CheckResult] = []

    # C1
    if sub_free:
        cn, pair = max_common_neighbors(g)
        checks.append(_check("C1", cn, t - 1, cn <= t - 1, f"max common neighbours at {pair}"))
    else:
        checks.append(_skip("C1", "contains K_{2,t} as a subgraph"))

    # C2
    if not sub_free:
        checks.append(_skip("C2", "contains K_{2,t} as a subgraph"))
    elif n < 2:
        checks.append(_skip("C2", "needs two vertices"))
    else:
        u = max((w for w in range(n) if w != v1), key=lambda w: (degs[w], -w))
        lhs = degs[u] + degs[v1]
        checks.append(_check("C2", lhs, n + t - 1, lhs <= n + t - 1, f"v1={v1}, worst u={u}"))

    # C3
    if not sub_free:
        checks.append(_skip("C3", "contains K_{2,t} as a subgraph"))
    elif x is None:
        checks.append(_skip("C3", "disconnected: no Perron vector"))
    else:
        rhs_all = [mu * mu + t - 1 - (t - 1) * math.sqrt(n) / x[u] for u in range(n)]
        u = min(range(n), key=lambda w: (degs[w] - rhs_all[w], w))
        checks.append(_check("C3", degs[u], rhs_all[u], degs[u] >= rhs_all[u] - SLACK, f"tightest u={u}"))

    # C4
    if not sub_free:
        checks.append(_skip("C4", "contains K_{2,t} as a subgraph"))
    elif x is None:
        checks.append(_skip("C4", "disconnected: no Perron vector"))
    elif t < 3 or n < 2:
        checks.append(_skip("C4", "needs t >= 3 and n >= 2"))
    elif not mu * mu > n - 1 + 1e-9:
        checks.append(_skip("C4", "mu^2 <= n - 1"))
    else:
        top = anchor_vertex(g, x)
        u = max((w for w in range(n) if w != top), key=lambda w: (x[w], -w))
        rhs = 2 * (t - 1) / math.sqrt(n)
        checks.append(_check("C4", x[u], rhs, x[u] <= rhs + SLACK, f"top entry at {top}, largest other u={u}"))

    # C5
    if minor_free:
        lhs = 2 * g.num_edges()
        rhs = (t + 1) * (n - 1)
        checks.append(_check("C5", lhs, rhs, lhs <= rhs, "2|E| against (t+1)(n-1)"))
    else:
        checks.append(_skip("C5", "contains a K_{2,t} minor"))

    # C6
    if not doms:
        checks.append(_skip("C6", "no dominating vertex"))
    else:
        hub = doms[0]
        if any(degs[w] > t for w in range(n) if w != hub):
            checks.append(_skip("C6", "some non-hub vertex has degree > t"))
        else:
            lhs = mu * (mu - t + 1)
            checks.append(_check("C6", lhs, n - 1, lhs <= n - 1 + SLACK, f"hub={hub}"))

    # C7
    if not doms:
        checks.append(_skip("C7", "no dominating vertex"))
    elif not minor_free:
        checks.append(_skip("C7", "contains a K_{2,t} minor"))
    else:
        hub = doms[0]
        rest = g.delete_vertex(hub)
        cap = t * (t - 3) / 2
        worst = None
        for comp in components(rest):
            h = rest.induced(comp)
            if k1t_minor_test(h, t).present:
                continue
            excess = h.num_edges() - h.n - cap
            if worst is None or excess > worst[0]:
                worst = (excess, h.num_edges(), h.n + cap, len(comp))
        if worst is None:
            checks.append(_skip("C7", "every component of g - v1 has a K_{1,t} minor"))
        else:
            _, e, r, size = worst
            checks.append(_check("C7", e, r, e <= r, f"hub={hub}, tightest component order {size}"))

    return AuditReport(write_graph6(g), t, tuple(checks))


def verify_equality_structure(g: Graph, t: int) -> bool:
    """Is g minus a dominating vertex a disjoint union of K_t's?"""
    doms = dominating_vertices(g) if g.n >= 2 else []
    if not doms:
        raise ValueError("graph has no dominating vertex")
    for hub in doms:
        rest = g.delete_vertex(hub)
        comps = components(rest)
        if all(len(c) == t and rest.induced(c).num_edges() == t * (t - 1) // 2 for c in comps):
            return True
    return False


def lemma1_hub_check(g: Graph, t: int) -> bool:
    """Does the top Perron entry (lowest index among ties) sit on a dominating vertex?"""
    if not g.is_connected():
        raise ValueError("lemma1_hub_check needs a connected graph")
    if g.n == 1:
        return True
    x = spectral_radius(g).vector
    return g.degree(anchor_vertex(g, x)) == g.n - 1
