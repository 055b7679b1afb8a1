"""Brute-force reference for betweenness and co-betweenness.

Nothing here touches the per-source DAG code. Distances come from
Floyd-Warshall. Geodesic counts on unweighted graphs are walk counts
``(A^d)[s, t]`` at ``d = dist(s, t)`` (a walk of geodesic length is a
geodesic). Weighted counts use a predecessor sum over the distance matrix.
Path counts through one or two vertices then follow from distance
splitting:

    sigma_st(v)    = sigma_sv * sigma_vt               if d(s,v) + d(v,t) == d(s,t)
    sigma_st(u, v) = sigma_su * sigma_uv * sigma_vt    if d(s,u) + d(u,v) + d(v,t) == d(s,t)

(plus the mirrored ordering of u and v). Everything is quartic in n_v, so
inputs above ``SIZE_GUARD`` vertices are refused unless forced.

The routing matrix gives each geodesic of each unordered pair {s, t} its own
column, with value ``sigma_st ** -0.5`` at the interior vertices. With that
exponent ``R @ R.T`` has betweenness on the diagonal and co-betweenness off
it. A column value of ``1 / sigma_st`` reproduces them only when geodesics
are unique; pass ``exponent=-1.0`` to see the difference.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .engine import CentralityResult
from .graph import Graph
from .pairs import PairAccumulator

SIZE_GUARD = 200


class OracleSizeError(ValueError):
    """Graph exceeds the brute-force size guard."""


def _guard(g: Graph, force: bool) -> None:
    if g.n_v > SIZE_GUARD and not force:
        raise OracleSizeError(
            f"brute-force oracle limited to {SIZE_GUARD} vertices (got {g.n_v}); pass force=True"
        )


@dataclass(frozen=True)
class PathTables:
    """All-pairs distance and geodesic-count matrices (``inf`` / 0 when unreachable)."""

    graph: Graph
    dist: np.ndarray
    sigma: np.ndarray
    tol: float = 0.0

    def on_geodesic(self, *legs: np.ndarray | float, total) -> np.ndarray:
        lhs = sum(legs)
        with np.errstate(invalid="ignore"):
            return np.isfinite(total) & (np.abs(lhs - total) <= self.tol)


def floyd_warshall(g: Graph) -> np.ndarray:
    n = g.n_v
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0.0)
    for u, v, w in g.edges():
        d[u, v] = d[v, u] = w
    for k in range(n):
        np.minimum(d, d[:, k, None] + d[None, k, :], out=d)
    return d


def _walk_counts(g: Graph, dist: np.ndarray) -> np.ndarray:
    n = g.n_v
    a = np.zeros((n, n), dtype=np.int64)
    for u, v, _ in g.edges():
        a[u, v] = a[v, u] = 1
    finite = dist[np.isfinite(dist)]
    diam = int(finite.max()) if finite.size else 0
    maxdeg = int(a.sum(axis=1).max()) if n else 0
    if diam and maxdeg > 1 and diam * np.log2(maxdeg) > 62:
        raise OverflowError("walk counts would overflow int64; use the weighted recurrence")
    sigma = np.zeros((n, n))
    power = np.eye(n, dtype=np.int64)
    for k in range(diam + 1):
        hit = dist == k
        sigma[hit] = power[hit]
        power = power @ a
    return sigma


def _predecessor_counts(g: Graph, dist: np.ndarray, tol: float) -> np.ndarray:
    n = g.n_v
    sigma = np.zeros((n, n))
    for s in range(n):
        sigma[s, s] = 1.0
        reach = [t for t in np.argsort(dist[s], kind="stable").tolist() if np.isfinite(dist[s, t])]
        for t in reach[1:]:
            sigma[s, t] = sum(
                sigma[s, p] for p, w in g.adjacency(t) if abs(dist[s, p] + w - dist[s, t]) <= tol and dist[s, p] < dist[s, t]
            )
    return sigma


def path_tables(g: Graph, tol: float = 0.0) -> PathTables:
    dist = floyd_warshall(g)
    if g.weighted:
        sigma = _predecessor_counts(g, dist, tol)
    else:
        try:
            sigma = _walk_counts(g, dist)
        except OverflowError:
            sigma = _predecessor_counts(g, dist, tol)
    return PathTables(g, dist, sigma, tol)


def _tables(g: Graph | PathTables) -> PathTables:
    return g if isinstance(g, PathTables) else path_tables(g)


def sigma_through(g: Graph | PathTables, s: int, t: int, v: int) -> float:
    """Number of s-t geodesics passing through ``v``."""
    pt = _tables(g)
    d, sg = pt.dist, pt.sigma
    if pt.on_geodesic(d[s, v], d[v, t], total=d[s, t]):
        return float(sg[s, v] * sg[v, t])
    return 0.0


def sigma_through_pair(g: Graph | PathTables, s: int, t: int, u: int, v: int) -> float:
    """Number of s-t geodesics passing through both ``u`` and ``v``."""
    pt = _tables(g)
    d, sg = pt.dist, pt.sigma
    if pt.on_geodesic(d[s, u], d[u, v], d[v, t], total=d[s, t]):
        return float(sg[s, u] * sg[u, v] * sg[v, t])
    if pt.on_geodesic(d[s, v], d[v, u], d[u, t], total=d[s, t]):
        return float(sg[s, v] * sg[v, u] * sg[u, t])
    return 0.0


def dependency_direct(g: Graph | PathTables, s: int, v: int) -> float:
    """Sum over targets t not in {s, v} of sigma_st(v) / sigma_st."""
    pt = _tables(g)
    return sum(
        sigma_through(pt, s, t, v) / pt.sigma[s, t]
        for t in range(pt.graph.n_v)
        if t not in (s, v) and pt.sigma[s, t] > 0
    )


def pair_dependency_direct(g: Graph | PathTables, s: int, u: int, v: int) -> float:
    """Sum over targets t not in {u, v} of sigma_st(u, v) / sigma_st."""
    pt = _tables(g)
    return sum(
        sigma_through_pair(pt, s, t, u, v) / pt.sigma[s, t]
        for t in range(pt.graph.n_v)
        if t not in (u, v, s) and pt.sigma[s, t] > 0
    )


def dependency_matrix(g: Graph | PathTables) -> np.ndarray:
    """``[s, v]`` = direct dependency of s on v; the diagonal is left 0."""
    pt = _tables(g)
    d, sg = pt.dist, pt.sigma
    n = pt.graph.n_v
    out = np.zeros((n, n))
    for v in range(n):
        mask = pt.on_geodesic(d[:, v, None], d[None, v, :], total=d)
        mask[:, v] = False
        mask[v, :] = False
        out[:, v] = _ratio(np.outer(sg[:, v], sg[v, :]), sg, mask).sum(axis=1)
    return out


def pair_dependency_matrix(g: Graph | PathTables, s: int) -> np.ndarray:
    """``[u, v]`` = direct pair dependency of s on {u, v}; zero when s is u or v."""
    pt = _tables(g)
    d, sg = pt.dist, pt.sigma
    n = pt.graph.n_v
    ds, ss = d[s], sg[s]
    total = ds[None, None, :]
    fwd = pt.on_geodesic(ds[:, None, None], d[:, :, None], d[None, :, :], total=total)
    num = np.where(fwd, ss[:, None, None] * sg[:, :, None] * sg[None, :, :], 0.0)
    num = num + num.transpose(1, 0, 2)
    ratio = _ratio(num, np.broadcast_to(ss[None, None, :], num.shape), np.ones(num.shape, bool))
    idx = np.arange(n)
    ratio[idx, :, idx] = 0.0  # t == u
    ratio[:, idx, idx] = 0.0  # t == v
    out = ratio.sum(axis=2)
    np.fill_diagonal(out, 0.0)
    out[s, :] = 0.0
    out[:, s] = 0.0
    return out


def _ratio(num: np.ndarray, den: np.ndarray, mask: np.ndarray) -> np.ndarray:
    return np.divide(num, den, out=np.zeros(num.shape), where=mask & (den > 0))


def brute_centrality(
    g: Graph,
    convention: str = "unordered",
    force: bool = False,
    tol: float = 0.0,
    tables: PathTables | None = None,
) -> CentralityResult:
    """Direct double sums over ordered endpoint pairs, halved for ``"unordered"``."""
    _guard(g, force)
    if convention not in ("unordered", "ordered"):
        raise ValueError(f"unknown convention {convention!r}")
    pt = tables or path_tables(g, tol)
    d, sg = pt.dist, pt.sigma
    n = g.n_v
    b = np.zeros(n)
    for v in range(n):
        mask = pt.on_geodesic(d[:, v, None], d[None, v, :], total=d)
        mask[v, :] = False
        mask[:, v] = False
        b[v] = _ratio(np.outer(sg[:, v], sg[v, :]), sg, mask).sum()

    cob = np.zeros((n, n))
    for u in range(n):
        for v in range(u + 1, n):
            if d[u, v] == np.inf:
                continue
            fwd = pt.on_geodesic(d[:, u, None], d[u, v], d[None, v, :], total=d)
            bwd = pt.on_geodesic(d[:, v, None], d[v, u], d[None, u, :], total=d)
            num = np.where(fwd, np.outer(sg[:, u], sg[v, :]) * sg[u, v], 0.0)
            num += np.where(bwd, np.outer(sg[:, v], sg[u, :]) * sg[v, u], 0.0)
            keep = np.ones((n, n), dtype=bool)
            keep[[u, v], :] = False
            keep[:, [u, v]] = False
            cob[u, v] = _ratio(num, sg, keep).sum()

    k = 2.0 if convention == "unordered" else 1.0
    return CentralityResult(g.vertices, b / k, PairAccumulator.from_dense(cob / k), convention)


@dataclass(frozen=True)
class GeodesicSet:
    s: int
    t: int
    paths: list[tuple[int, ...]]

    def __len__(self) -> int:
        return len(self.paths)


def enumerate_geodesics(g: Graph | PathTables, s: int, t: int) -> GeodesicSet:
    """Every s-t geodesic, found by walking predecessors back from ``t``."""
    pt = _tables(g)
    d = pt.dist
    if not np.isfinite(d[s, t]):
        return GeodesicSet(s, t, [])
    adj = pt.graph
    found: list[tuple[int, ...]] = []
    stack: list[tuple[int, tuple[int, ...]]] = [(t, (t,))]
    while stack:
        x, suffix = stack.pop()
        if x == s:
            found.append(suffix)
            continue
        for p, w in adj.adjacency(x):
            if d[s, p] < d[s, x] and abs(d[s, p] + w - d[s, x]) <= pt.tol:
                stack.append((p, (p,) + suffix))
    return GeodesicSet(s, t, sorted(found))


@dataclass(frozen=True)
class RoutingMatrix:
    """Vertex-by-geodesic incidence; ``columns[j]`` is the routed path of column j."""

    matrix: np.ndarray
    columns: list[tuple[int, ...]]


def build_routing_matrix(
    g: Graph,
    exponent: float = -0.5,
    convention: str = "unordered",
    force: bool = False,
    tables: PathTables | None = None,
) -> RoutingMatrix:
    """One column per geodesic of each reachable pair; ``"ordered"`` duplicates columns."""
    _guard(g, force)
    pt = tables or path_tables(g)
    cols: list[tuple[int, ...]] = []
    entries: list[float] = []
    for s, t in combinations(range(g.n_v), 2):
        geo = enumerate_geodesics(pt, s, t)
        if not geo.paths:
            continue
        value = float(len(geo)) ** exponent
        reps = 2 if convention == "ordered" else 1
        for path in geo.paths:
            for _ in range(reps):
                cols.append(path)
                entries.append(value)
    r = np.zeros((g.n_v, len(cols)))
    for j, (path, value) in enumerate(zip(cols, entries)):
        r[list(path[1:-1]), j] = value
    return RoutingMatrix(r, cols)


def omega(rm: RoutingMatrix) -> np.ndarray:
    return rm.matrix @ rm.matrix.T
