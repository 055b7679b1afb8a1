"""Single-source shortest-path DAGs with geodesic counts."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass

import numpy as np

from .graph import Graph

UNREACHABLE = np.inf


@dataclass(frozen=True)
class SpDag:
    """Union of all geodesics leaving ``source``.

    ``settle_order`` lists the reachable vertices by non-decreasing
    distance; unreachable vertices have ``dist == inf``, ``sigma == 0`` and
    no parents or children. ``sigma`` is a float64 count and loses
    exactness beyond 2**53.
    """

    source: int
    dist: np.ndarray
    sigma: np.ndarray
    parents: list[list[int]]
    children: list[list[int]]
    settle_order: list[int]


def _bfs(g: Graph, s: int):
    n = g.n_v
    dist = np.full(n, UNREACHABLE)
    sigma = np.zeros(n)
    parents: list[list[int]] = [[] for _ in range(n)]
    children: list[list[int]] = [[] for _ in range(n)]
    indptr, indices = g.indptr.tolist(), g.indices.tolist()
    hop = [-1] * n
    sig = [0.0] * n
    hop[s] = 0
    sig[s] = 1.0
    order = []
    queue = deque([s])
    while queue:
        v = queue.popleft()
        order.append(v)
        dv = hop[v] + 1
        for w in indices[indptr[v]:indptr[v + 1]]:
            if hop[w] < 0:
                hop[w] = dv
                queue.append(w)
            if hop[w] == dv:
                sig[w] += sig[v]
                parents[w].append(v)
                children[v].append(w)
    for v in order:
        dist[v] = hop[v]
    sigma[:] = sig
    return dist, sigma, parents, children, order


def _dijkstra(g: Graph, s: int, tol: float):
    n = g.n_v
    dist = [UNREACHABLE] * n
    dist[s] = 0.0
    done = [False] * n
    order = []
    heap = [(0.0, s)]
    while heap:
        d, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        order.append(v)
        for w, wt in g.adjacency(v):
            nd = d + wt
            if nd < dist[w]:
                dist[w] = nd
                heapq.heappush(heap, (nd, w))
    # Parents are resolved after settling so ties within ``tol`` are seen
    # regardless of relaxation order; only earlier-settled vertices qualify.
    rank = {v: i for i, v in enumerate(order)}
    parents: list[list[int]] = [[] for _ in range(n)]
    children: list[list[int]] = [[] for _ in range(n)]
    sig = [0.0] * n
    sig[s] = 1.0
    for w in order:
        if w == s:
            continue
        for v, wt in g.adjacency(w):
            if rank.get(v, n) < rank[w] and abs(dist[v] + wt - dist[w]) <= tol:
                parents[w].append(v)
                sig[w] += sig[v]
    for w in order:
        for v in parents[w]:
            children[v].append(w)
    return np.array(dist), np.array(sig), parents, children, order


def build_sp_dag(g: Graph, s: int, tol: float = 0.0) -> SpDag:
    """Shortest-path DAG from ``s``: BFS when unweighted, Dijkstra otherwise.

    ``tol`` widens the weighted tie test ``dist(v) + w == dist(w)`` to an
    absolute tolerance; it is ignored for unweighted graphs.
    """
    if not 0 <= s < g.n_v:
        raise IndexError(f"source {s} out of range for {g.n_v} vertices")
    if g.weighted:
        parts = _dijkstra(g, s, tol)
    else:
        parts = _bfs(g, s)
    return SpDag(s, *parts)


def count_total_geodesics(g: Graph, tol: float = 0.0) -> float:
    """Sum of sigma over ordered reachable pairs ``u != v``."""
    total = 0.0
    for s in range(g.n_v):
        dag = build_sp_dag(g, s, tol)
        total += float(dag.sigma.sum()) - 1.0
    return total
