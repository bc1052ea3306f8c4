"""Spectral radius, Perron vectors and the closed-form bounds around F_t(n)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
import scipy.linalg
import scipy.sparse

from .graph import Graph, components

DEFAULT_TOL = 1e-10
MAX_ITER = 10**6
STALL_ITER = 20_000
DENSE_FALLBACK_MAX_N = 64

THEOREM1_MIN_N = 40_000


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class SpectralResult:
    mu: float
    vector: Optional[np.ndarray]
    iterations: int
    residual: float


@dataclass(frozen=True)
class BoundSet:
    upper: float
    lower: float
    ysh: Optional[float]
    lower_in_range: bool


def _sparse_adjacency(g: Graph, vertices: Sequence[int]) -> scipy.sparse.csr_matrix:
    pos = {v: i for i, v in enumerate(vertices)}
    rows, cols = [], []
    for v in vertices:
        for u in g.neighbors(v):
            rows.append(pos[v])
            cols.append(pos[u])
    k = len(vertices)
    data = np.ones(len(rows))
    return scipy.sparse.csr_matrix((data, (rows, cols)), shape=(k, k))


def _count_above(a: np.ndarray, x: float) -> int:
    """Number of eigenvalues of symmetric ``a`` strictly above ``x`` (LDL inertia)."""
    _, d, _ = scipy.linalg.ldl(a - x * np.eye(a.shape[0]))
    count = 0
    i = 0
    k = d.shape[0]
    while i < k:
        if i + 1 < k and d[i + 1, i] != 0:
            count += int(np.sum(np.linalg.eigvalsh(d[i:i + 2, i:i + 2]) > 0))
            i += 2
        else:
            count += d[i, i] > 0
            i += 1
    return count


def _dense_perron(a: np.ndarray, lo: float, tol: float) -> tuple[float, np.ndarray]:
    """Largest eigenvalue by inertia bisection, vector by inverse iteration."""
    hi = float(a.sum(axis=1).max())
    lo = min(lo, hi) - tol
    while _count_above(a, lo) == 0:
        lo -= 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if _count_above(a, mid) >= 1:
            lo = mid
        else:
            hi = mid
    mu = 0.5 * (lo + hi)
    k = a.shape[0]
    x = np.ones(k) / math.sqrt(k)
    shift = mu + max(1e-9, 16 * np.finfo(float).eps * max(1.0, mu))
    for _ in range(5):
        x = np.linalg.solve(a - shift * np.eye(k), x)
        x = np.abs(x) / np.linalg.norm(x)
    return mu, x


def _component_perron(g: Graph, vertices: list[int], tol: float, max_iter: int) -> SpectralResult:
    k = len(vertices)
    if k == 1:
        return SpectralResult(0.0, np.ones(1), 0, 0.0)
    a = _sparse_adjacency(g, vertices)
    x = np.full(k, 1.0 / math.sqrt(k))
    it = 0
    while True:
        ax = a @ x
        rho = float(x @ ax)
        residual = float(np.max(np.abs(ax - rho * x)))
        if residual <= tol:
            return SpectralResult(rho, x, it, residual)
        if it >= STALL_ITER and k <= DENSE_FALLBACK_MAX_N:
            dense = a.toarray()
            mu, x = _dense_perron(dense, rho, tol)
            residual = float(np.max(np.abs(dense @ x - mu * x)))
            return SpectralResult(mu, x, it, residual)
        if it >= max_iter:
            raise ConvergenceError(f"power iteration did not reach residual {tol} in {max_iter} steps (at {residual:.3e})")
        y = ax + x
        x = y / np.linalg.norm(y)
        it += 1


def spectral_radius(g: Graph, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER) -> SpectralResult:
    """Largest adjacency eigenvalue; ``vector`` only for connected graphs.

    Power iteration runs on ``A + I`` from the all-ones vector so bipartite
    components cannot oscillate.
    """
    if g.n == 0:
        raise ValueError("spectral radius of the empty graph is undefined")
    if tol <= 0:
        raise ValueError("tol must be positive")
    best = None
    total = 0
    parts = components(g)
    for comp in parts:
        res = _component_perron(g, comp, tol, max_iter)
        total += res.iterations
        if best is None or res.mu > best[0].mu:
            best = (res, comp)
    res, comp = best
    if len(parts) > 1:
        return SpectralResult(res.mu, None, total, res.residual)
    return SpectralResult(res.mu, res.vector, total, res.residual)


def perron_vector(g: Graph, tol: float = DEFAULT_TOL) -> SpectralResult:
    if not g.is_connected():
        raise ValueError("Perron vector requires a connected graph")
    return spectral_radius(g, tol)


def edge_weight_sum(g: Graph, w: Sequence[float]) -> float:
    if len(w) != g.n:
        raise ValueError(f"weight vector has length {len(w)}, graph has {g.n} vertices")
    return math.fsum(float(w[u]) * float(w[v]) for u, v in g.edges())


# -- the extremal family: exact values ---------------------------------

def _split(t: int, n: int) -> tuple[int, int]:
    if t < 2:
        raise ValueError(f"t must be >= 2, got {t}")
    if n < t + 1:
        raise ValueError(f"need n >= t + 1, got t={t}, n={n}")
    return divmod(n - 1, t)


def ft_cubic(t: int, n: int) -> tuple[int, int, int]:
    """Coefficients (a, b, c) of x^3 + a x^2 + b x + c whose largest root is mu(F_t(n))."""
    _, s = _split(t, n)
    r = s - 1
    return -(t - 1 + r), -(n - 1) + r * (t - 1), r * (n - 1) + s * (t - s)


def ft_quotient_matrix(t: int, n: int) -> np.ndarray:
    """Quotient of the partition {hub} | K_t blocks | K_s block."""
    p, s = _split(t, n)
    if s == 0:
        return np.array([[0.0, p * t], [1.0, t - 1.0]])
    return np.array([[0.0, p * t, s], [1.0, t - 1.0, 0.0], [1.0, 0.0, s - 1.0]])


def ft_mu_exact(t: int, n: int) -> float:
    """mu(F_t(n)) as the largest root of its cubic, to machine precision."""
    _, s = _split(t, n)
    if s == 0:
        return _quadratic_root(t, n)
    a, b, c = ft_cubic(t, n)
    # depressed cubic y^3 + p y + q with x = y - a/3; all three roots are real
    p = b - a * a / 3.0
    q = 2.0 * a**3 / 27.0 - a * b / 3.0 + c
    m = 2.0 * math.sqrt(-p / 3.0)
    arg = 3.0 * q / (p * m)
    theta = math.acos(max(-1.0, min(1.0, arg))) / 3.0
    x = m * math.cos(theta) - a / 3.0
    # two Newton steps in exact rational arithmetic
    xf = Fraction(x)
    for _ in range(2):
        f = ((xf + a) * xf + b) * xf + c
        df = (3 * xf + 2 * a) * xf + b
        xf -= f / df
    return float(xf)


def _quadratic_root(t: int, n: int) -> float:
    # largest root of x^2 - (t-1) x - (n-1)
    return (t - 1) / 2.0 + math.sqrt(n + (t * t - 2 * t - 3) / 4.0)


# -- bounds ---------------------------------------------------------------

def bound_upper(t: int, n: int) -> float:
    if t < 2 or n < 1:
        raise ValueError(f"bound_upper needs t >= 2, n >= 1 (got t={t}, n={n})")
    return _quadratic_root(t, n)


def theorem2_min_n(t: int) -> int:
    return 400 * t**6


def lemma1_min_n(t: int) -> int:
    """Order above which the maximiser's top Perron entry sits on a dominating vertex."""
    return 16 * (t - 1) ** 4 * (5 * t - 3) ** 2


def lower_in_range(t: int, n: int) -> bool:
    return t >= 4 and n >= theorem2_min_n(t)


def bound_lower(t: int, n: int, allow_out_of_range: bool = False) -> float:
    """``bound_upper(t, n) - t(t+1)/(8n)``; proven below mu(F_t(n)) for t >= 4, n >= 400 t^6."""
    if not allow_out_of_range and not lower_in_range(t, n):
        raise ValueError(f"(t={t}, n={n}) outside t >= 4, n >= 400 t^6; pass allow_out_of_range=True")
    return bound_upper(t, n) - t * (t + 1) / (8.0 * n)


def bound_ysh(n: int) -> float:
    if n < 2:
        raise ValueError(f"bound_ysh needs n >= 2, got {n}")
    return 1.5 + math.sqrt(n - 1.75)


def bounds(t: int, n: int) -> BoundSet:
    return BoundSet(
        upper=bound_upper(t, n),
        lower=bound_lower(t, n, allow_out_of_range=True),
        ysh=bound_ysh(n) if t == 3 and n >= 2 else None,
        lower_in_range=lower_in_range(t, n),
    )
