"""Minor containment for small patterns.

``has_minor`` is a branch-set backtracking search; ``has_minor_oracle`` is an
independent delete/contract recursion used to cross-check it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .graph import (
    Graph,
    bits,
    blocks,
    canonical_code,
    complete_bipartite,
    components,
    contract_edge,
    is_biconnected,
    max_common_neighbors,
    reach,
    star,
)

MAX_PATTERN = 12
MAX_ORACLE = 8


class CapabilityError(ValueError):
    """Input is outside what the requested algorithm is built for."""


@dataclass(frozen=True)
class MinorWitness:
    """Verdict plus (when constructed) one branch set per pattern vertex.

    ``method`` records how the verdict was reached: ``search``, ``size``,
    ``subgraph`` or ``density``.  A density verdict carries no branch sets.
    """

    present: bool
    branch_sets: Optional[tuple[frozenset[int], ...]]
    method: str = "search"

    def __bool__(self) -> bool:
        return self.present


def validate_witness(g: Graph, h: Graph, branch_sets) -> bool:
    if branch_sets is None or len(branch_sets) != h.n:
        return False
    masks = []
    seen = 0
    for s in branch_sets:
        mask = 0
        for v in s:
            if not 0 <= v < g.n:
                return False
            mask |= 1 << v
        if not mask or mask & seen or reach(g, min(s), mask) != mask:
            return False
        seen |= mask
        masks.append(mask)
    for a, b in h.edges():
        if not any(g.adj[v] & masks[b] for v in bits(masks[a])):
            return False
    return True


# -- branch-set backtracking -------------------------------------------

class _Plan:
    """Placement order and static pruning tables for one pattern."""

    def __init__(self, h: Graph):
        k = h.n
        deg = h.degrees()
        order: list[int] = []
        left = set(range(k))
        while left:
            placed = set(order)
            v = max(left, key=lambda u: (deg[u], sum(1 for w in h.neighbors(u) if w in placed), -u))
            order.append(v)
            left.remove(v)
        pos = {v: i for i, v in enumerate(order)}
        self.k = k
        self.order = order
        self.degree = [deg[v] for v in order]
        self.earlier = [[pos[w] for w in h.neighbors(v) if pos[w] < i] for i, v in enumerate(order)]
        self.saturated = [len(self.earlier[i]) == self.degree[i] for i in range(k)]
        # later[j][i]: neighbours of order[j] placed after position i
        self.later = [[sum(1 for w in h.neighbors(order[j]) if pos[w] > i) for i in range(k)] for j in range(k)]
        self.waiting = [[(l, [j for j in self.earlier[l] if j <= i]) for l in range(i + 1, k)] for i in range(k)]
        self.waiting = [[(l, js) for l, js in row if js] for row in self.waiting]
        self.twin_of: list[Optional[int]] = [None] * k
        for i, v in enumerate(order):
            for j in range(i - 1, -1, -1):
                u = order[j]
                if h.adj[u] & ~(1 << v) == h.adj[v] & ~(1 << u):
                    self.twin_of[i] = j
                    break


class _Search:
    def __init__(self, g: Graph, plan: _Plan):
        self.g = g
        self.plan = plan
        self.sets: list[int] = [0] * plan.k
        self.nbrs: list[int] = [0] * plan.k

    def run(self) -> Optional[list[int]]:
        if self._place(0, self.g.vertex_mask()):
            return list(self.sets)
        return None

    def _candidates(self, i: int, free: int) -> Iterator[tuple[int, int]]:
        plan, adj = self.plan, self.g.adj
        req = [self.sets[j] for j in plan.earlier[i]]
        limit = free.bit_count() - (plan.k - i - 1)
        if limit < 1:
            return
        floor = 0
        if plan.twin_of[i] is not None:
            prev = self.sets[plan.twin_of[i]]
            floor = (prev & -prev).bit_length()
        single = plan.degree[i] <= 1
        stop_when_ok = plan.saturated[i]
        roots = free & ~((1 << floor) - 1)
        while roots:
            rbit = roots & -roots
            roots ^= rbit
            r = rbit.bit_length() - 1
            if single:
                if all(adj[r] & m for m in req):
                    yield rbit, adj[r]
                continue
            allowed = free & ~((1 << r) - 1)
            stack = [(rbit, adj[r], adj[r] & allowed & ~rbit, 0, 1)]
            while stack:
                s, ns, cand, excl, size = stack.pop()
                if all(ns & m for m in req):
                    yield s, ns
                    if stop_when_ok:
                        continue
                if size == limit:
                    continue
                children = []
                while cand:
                    vbit = cand & -cand
                    cand ^= vbit
                    row = adj[vbit.bit_length() - 1]
                    new_cand = (cand | row) & allowed & ~s & ~vbit & ~excl
                    children.append((s | vbit, ns | row, new_cand, excl, size + 1))
                    excl |= vbit
                stack.extend(reversed(children))

    def _place(self, i: int, free: int) -> bool:
        plan = self.plan
        if i == plan.k:
            return True
        for s, ns in self._candidates(i, free):
            rest = free & ~s
            self.sets[i] = s
            self.nbrs[i] = ns
            if self._feasible(i, rest) and self._place(i + 1, rest):
                return True
        self.sets[i] = 0
        return False

    def _feasible(self, i: int, free: int) -> bool:
        plan = self.plan
        if free.bit_count() < plan.k - i - 1:
            return False
        for j in range(i + 1):
            need = plan.later[j][i]
            if need and (self.nbrs[j] & free).bit_count() < need:
                return False
        waiting = plan.waiting[i]
        if not waiting:
            return True
        comps = []
        left = free
        while left:
            v = (left & -left).bit_length() - 1
            c = reach(self.g, v, free)
            left &= ~c
            touch = 0
            for u in bits(c):
                touch |= self.g.adj[u]
            comps.append(touch)
        for _, js in waiting:
            if not any(all(touch & self.sets[j] for j in js) for touch in comps):
                return False
        return True


def _regions(g: Graph, h: Graph) -> list[list[int]]:
    if h.n >= 3 and is_biconnected(h):
        return [b for b in blocks(g) if len(b) >= h.n]
    if h.n >= 1 and h.is_connected():
        return [c for c in components(g) if len(c) >= h.n]
    return [list(range(g.n))]


def has_minor(g: Graph, h: Graph) -> MinorWitness:
    """Decide whether ``h`` is a minor of ``g``; on success return a model."""
    if h.n > MAX_PATTERN:
        raise CapabilityError(f"pattern has {h.n} vertices; engine handles at most {MAX_PATTERN}")
    if h.n == 0:
        return MinorWitness(True, (), "size")
    m = h.num_edges()
    if g.n < h.n or g.num_edges() < m:
        return MinorWitness(False, None, "size")
    plan = _Plan(h)
    for region in _regions(g, h):
        sub = g.induced(region)
        if sub.num_edges() < m:
            continue
        found = _Search(sub, plan).run()
        if found is None:
            continue
        sets: list[frozenset[int]] = [frozenset()] * h.n
        for i, mask in enumerate(found):
            sets[plan.order[i]] = frozenset(region[v] for v in bits(mask))
        return MinorWitness(True, tuple(sets), "search")
    return MinorWitness(False, None, "search")


# -- delete/contract oracle --------------------------------------------

_ORACLE_MEMO: dict[tuple, bool] = {}


def _spanning_subgraph(g: Graph, h: Graph) -> bool:
    """Is there a bijection V(h) -> V(g) carrying every h-edge onto a g-edge?"""
    n = h.n
    hdeg = h.degrees()
    order = sorted(range(n), key=lambda v: -hdeg[v])
    gdeg = g.degrees()
    image = [-1] * n

    def extend(i: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in range(n):
            if used >> w & 1 or gdeg[w] < hdeg[v]:
                continue
            if all(g.adj[w] >> image[u] & 1 for u in h.neighbors(v) if image[u] >= 0):
                image[v] = w
                if extend(i + 1, used | 1 << w):
                    return True
                image[v] = -1
        return False

    return extend(0, 0)


def _oracle(g: Graph, h: Graph, hkey: tuple, hm: int) -> bool:
    key = (canonical_code(g), hkey)
    hit = _ORACLE_MEMO.get(key)
    if hit is not None:
        return hit
    if g.n < h.n or g.num_edges() < hm:
        result = False
    elif g.n == h.n:
        result = _spanning_subgraph(g, h)
    else:
        result = False
        seen = set()
        children = [contract_edge(g, u, v) for u, v in g.edges()]
        children += [g.delete_vertex(v) for v in range(g.n)]
        for child in children:
            ck = canonical_code(child)
            if ck in seen:
                continue
            seen.add(ck)
            if _oracle(child, h, hkey, hm):
                result = True
                break
    _ORACLE_MEMO[key] = result
    return result


def has_minor_oracle(g: Graph, h: Graph) -> bool:
    """Exhaustive delete/contract recursion with isomorphism memoisation."""
    if g.n > MAX_ORACLE:
        raise CapabilityError(f"oracle handles at most {MAX_ORACLE} vertices, got {g.n}")
    if h.n == 0:
        return True
    return _oracle(g, h, canonical_code(h), h.num_edges())


# -- K_{2,t} specifics ---------------------------------------------------

def k2t_subgraph_test(g: Graph, t: int) -> bool:
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    return max_common_neighbors(g)[0] >= t


def k2t_minor_test(g: Graph, t: int, force_witness: bool = False) -> MinorWitness:
    """K_{2,t} minor test with the edge-density and common-neighbour shortcuts first.

    Graphs with 2|E| > (t+1)(n-1) always contain a K_{2,t} minor, so they are
    reported present without a model unless ``force_witness`` is set.
    """
    if t < 2:
        raise ValueError(f"t must be >= 2, got {t}")
    n, m = g.n, g.num_edges()
    if n < t + 2 or m < 2 * t:
        return MinorWitness(False, None, "size")
    if not force_witness and 2 * m > (t + 1) * (n - 1):
        return MinorWitness(True, None, "density")
    count, pair = max_common_neighbors(g)
    if count >= t:
        u, v = pair
        common = bits(g.adj[u] & g.adj[v])[:t]
        sets = (frozenset([u]), frozenset([v])) + tuple(frozenset([c]) for c in common)
        return MinorWitness(True, sets, "subgraph")
    return has_minor(g, complete_bipartite(2, t))


def k1t_minor_test(g: Graph, t: int) -> MinorWitness:
    return has_minor(g, star(t + 1))
