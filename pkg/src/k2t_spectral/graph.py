"""Simple undirected graphs stored as adjacency bitrows.

Row ``adj[v]`` is a Python int whose bit ``u`` is set iff ``{u, v}`` is an
edge.  Graph values are immutable; every operation returns a new graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_VERTICES = 1 << 16


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the 0-based byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside [0, {MAX_VERTICES}]")
        if len(self.adj) != self.n:
            raise ValueError("need exactly one adjacency row per vertex")

    # -- construction -------------------------------------------------
    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, a) -> Graph:
        a = np.asarray(a)
        n = a.shape[0]
        return cls.from_edges(n, ((i, j) for i, j in zip(*np.nonzero(np.triu(a, 1)))))

    # -- queries ------------------------------------------------------
    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return bits(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.adj):
            for v in bits(row >> (u + 1)):
                yield u, u + 1 + v

    def non_edges(self) -> Iterator[tuple[int, int]]:
        for u, v in combinations(range(self.n), 2):
            if not self.adj[u] >> v & 1:
                yield u, v

    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def adjacency_matrix(self, dtype=float) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def is_connected(self) -> bool:
        return self.n > 0 and reach(self, 0, self.vertex_mask()) == self.vertex_mask()

    # -- derived graphs -----------------------------------------------
    def with_edges(self, removed: Iterable[tuple[int, int]] = (), added: Iterable[tuple[int, int]] = ()) -> Graph:
        rows = list(self.adj)
        for u, v in removed:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        for u, v in added:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Induced subgraph, vertex ``vertices[i]`` becoming ``i``."""
        pos = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            row = 0
            for u in bits(self.adj[v]):
                if u in pos:
                    row |= 1 << pos[u]
            rows.append(row)
        return Graph(len(vertices), tuple(rows))

    def delete_vertex(self, v: int) -> Graph:
        return self.induced([u for u in range(self.n) if u != v])

    def relabel(self, order: Sequence[int]) -> Graph:
        """Graph whose vertex ``i`` is this graph's vertex ``order[i]``."""
        return self.induced(order)

    def __str__(self) -> str:
        return write_graph6(self)


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def reach(g: Graph, start: int, allowed: int) -> int:
    """Bitmask of vertices reachable from ``start`` inside ``allowed``."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


# -- named families and algebra ----------------------------------------

def complete(k: int) -> Graph:
    full = (1 << k) - 1
    return Graph(k, tuple(full & ~(1 << v) for v in range(k)))


def empty(k: int) -> Graph:
    return Graph.empty(k)


def path(k: int) -> Graph:
    return Graph.from_edges(k, ((i, i + 1) for i in range(k - 1)))


def cycle(k: int) -> Graph:
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def star(k: int) -> Graph:
    """Star on ``k`` vertices, centre 0."""
    return Graph.from_edges(k, ((0, i) for i in range(1, k)))


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with the ``a`` side first."""
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


_NAMED = {"complete": (complete, 1), "path": (path, 1), "cycle": (cycle, 3), "star": (star, 1), "empty": (empty, 1)}


def build_named(kind: str, k: int) -> Graph:
    try:
        make, low = _NAMED[kind]
    except KeyError:
        raise ValueError(f"unknown family {kind!r}; expected one of {sorted(_NAMED)}") from None
    if k < low:
        raise ValueError(f"{kind} needs k >= {low}, got {k}")
    return make(k)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    if g.n + h.n > MAX_VERTICES:
        raise ValueError("combined graph exceeds vertex cap")
    return Graph(g.n + h.n, g.adj + tuple(row << g.n for row in h.adj))


def join(g: Graph, h: Graph) -> Graph:
    if g.n + h.n > MAX_VERTICES:
        raise ValueError("combined graph exceeds vertex cap")
    high = ((1 << h.n) - 1) << g.n
    low = (1 << g.n) - 1
    return Graph(g.n + h.n, tuple(row | high for row in g.adj) + tuple((row << g.n) | low for row in h.adj))


def union_all(graphs: Iterable[Graph]) -> Graph:
    out = Graph.empty(0)
    for g in graphs:
        out = disjoint_union(out, g)
    return out


def contract_edge(g: Graph, u: int, v: int) -> Graph:
    """Merge the endpoints of edge ``{u, v}`` into vertex ``min(u, v)``."""
    if u == v or not g.has_edge(u, v):
        raise ValueError(f"{{{u}, {v}}} is not an edge")
    keep, drop = min(u, v), max(u, v)
    rows = list(g.adj)
    merged = (rows[keep] | rows[drop]) & ~(1 << keep) & ~(1 << drop)
    rows[keep] = merged
    for w in bits(merged):
        rows[w] = (rows[w] & ~(1 << drop)) | (1 << keep)
    rows[drop] = 0
    low = (1 << drop) - 1
    squeezed = [(row & low) | ((row >> (drop + 1)) << drop) for i, row in enumerate(rows) if i != drop]
    return Graph(g.n - 1, tuple(squeezed))


def components(g: Graph) -> list[list[int]]:
    left = g.vertex_mask()
    out = []
    while left:
        start = (left & -left).bit_length() - 1
        comp = reach(g, start, left)
        out.append(bits(comp))
        left &= ~comp
    return out


def common_neighbor_count(g: Graph, u: int, v: int) -> int:
    if u == v:
        raise ValueError("common_neighbor_count needs two distinct vertices")
    return (g.adj[u] & g.adj[v]).bit_count()


def max_common_neighbors(g: Graph) -> tuple[int, tuple[int, int] | None]:
    """Largest two-walk count over vertex pairs, with a pair attaining it."""
    best, pair = -1, None
    for u, v in combinations(range(g.n), 2):
        c = (g.adj[u] & g.adj[v]).bit_count()
        if c > best:
            best, pair = c, (u, v)
    return max(best, 0), pair


def blocks(g: Graph) -> list[list[int]]:
    """Vertex sets of the biconnected components (bridges count as blocks).

    Isolated vertices are not reported.
    """
    disc = [-1] * g.n
    low = [0] * g.n
    out: list[list[int]] = []
    timer = 0
    for root in range(g.n):
        if disc[root] != -1 or not g.adj[root]:
            continue
        disc[root] = low[root] = timer
        timer += 1
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(g.neighbors(root)))]
        while stack:
            v, parent, it = stack[-1]
            pushed = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, iter(g.neighbors(w))))
                    pushed = True
                    break
                if w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if pushed:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if low[v] >= disc[p]:
                    comp = set()
                    while True:
                        a, b = edge_stack.pop()
                        comp.update((a, b))
                        if (a, b) == (p, v):
                            break
                    out.append(sorted(comp))
    return out


def is_biconnected(g: Graph) -> bool:
    """2-connected in the usual sense: connected, n >= 3, no cut vertex."""
    if g.n < 3 or not g.is_connected():
        return False
    return len(blocks(g)) == 1


# -- graph6 -------------------------------------------------------------

def write_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        header = [n + 63]
    else:
        header = [126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63]
    body = []
    acc = nbits = 0
    for j in range(1, n):
        row = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                body.append(acc + 63)
                acc = nbits = 0
    if nbits:
        body.append((acc << (6 - nbits)) + 63)
    return bytes(header + body).decode("ascii")


def parse_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    line = text.strip()
    skip = 0
    if line.startswith(">>graph6<<"):
        skip = len(">>graph6<<")
        line = line[skip:]
    data = line.encode("ascii", errors="replace")
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {b!r} outside printable range 63-126", skip + i)
    if not data:
        raise Graph6Error("empty graph6 line", skip)
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        raise Graph6Error(f"8-byte header encodes n > {MAX_VERTICES}", skip)
    else:
        if len(data) < 4:
            raise Graph6Error("truncated extended size header", skip + len(data))
        n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
        pos = 4
        if n <= 62:
            raise Graph6Error("extended header used for n <= 62", skip)
    if n > MAX_VERTICES:
        raise Graph6Error(f"n = {n} exceeds cap {MAX_VERTICES}", skip)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos < nbytes:
        raise Graph6Error(f"truncated bit section: need {nbytes} bytes", skip + len(data))
    if len(data) - pos > nbytes:
        raise Graph6Error("trailing bytes after bit section", skip + pos + nbytes)
    rows = [0] * n
    k = 0
    i, j = 0, 1
    for off in range(nbytes):
        chunk = data[pos + off] - 63
        for shift in range(5, -1, -1):
            bit = chunk >> shift & 1
            if k < nbits:
                if bit:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                i += 1
                if i == j:
                    i, j = 0, j + 1
            elif bit:
                raise Graph6Error("nonzero padding bit", skip + pos + off)
            k += 1
    return Graph(n, tuple(rows))


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        if line.strip():
            yield parse_graph6(line)


# -- canonical form -----------------------------------------------------

def _refine(g: Graph, cells: list[int]) -> list[int]:
    """Equitable refinement of an ordered partition given as cell bitmasks."""
    while True:
        sigs: dict[tuple, int] = {}
        for ci, cell in enumerate(cells):
            for v in bits(cell):
                row = g.adj[v]
                key = (ci,) + tuple((row & c).bit_count() for c in cells)
                sigs[key] = sigs.get(key, 0) | 1 << v
        new = [sigs[k] for k in sorted(sigs)]
        if len(new) == len(cells):
            return new
        cells = new


def _code(g: Graph, order: list[int]) -> int:
    code = 0
    for j in range(1, g.n):
        row = g.adj[order[j]]
        for i in range(j):
            code = code << 1 | (row >> order[i] & 1)
    return code


@lru_cache(maxsize=1 << 18)
def canonical_code(g: Graph) -> tuple[int, int]:
    """Isomorphism-invariant key ``(n, code)``.

    ``code`` is the lexicographically smallest upper-triangle adjacency
    string (graph6 bit order) over the leaves of an individualisation and
    refinement search tree.  Two graphs share a key iff they are isomorphic.
    """
    n = g.n
    if n <= 1:
        return n, 0
    m = g.num_edges()
    if m == 0 or m == n * (n - 1) // 2:
        return n, 0 if m == 0 else (1 << m) - 1
    groups = _group_by_degree(g)
    start = _refine(g, [groups[d] for d in sorted(groups)])
    best = [None]

    def search(cells: list[int]) -> None:
        target = next((i for i, c in enumerate(cells) if c & (c - 1)), None)
        if target is None:
            code = _code(g, [c.bit_length() - 1 for c in cells])
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        cell = cells[target]
        for v in bits(cell):
            split = cells[:target] + [1 << v, cell & ~(1 << v)] + cells[target + 1:]
            search(_refine(g, split))

    search(start)
    return n, best[0]


def _group_by_degree(g: Graph) -> dict[int, int]:
    groups: dict[int, int] = {}
    for v, row in enumerate(g.adj):
        d = row.bit_count()
        groups[d] = groups.get(d, 0) | 1 << v
    return groups


def canonical_graph(g: Graph) -> Graph:
    """The representative whose upper-triangle string is the canonical code."""
    n, code = canonical_code(g)
    rows = [0] * n
    k = n * (n - 1) // 2
    for j in range(1, n):
        for i in range(j):
            k -= 1
            if code >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return canonical_code(g) == canonical_code(h)
