"""Betweenness and co-betweenness for every vertex and vertex pair.

Each source runs the same pipeline: build its shortest-path DAG,
sweep dependencies backwards, then walk every geodesic depth-first and
credit each interior ancestor ``u`` of a visited vertex ``v`` with
``delta(v) / sigma(v)``. Sources are independent, so they are dealt out to
workers with private accumulators and merged once at the end.

The hot loop runs in the compiled ``_core`` extension when it is
importable; otherwise (or with ``COBETWEEN_PURE_PYTHON=1``) the pure-Python
stages below are used. Both paths produce the same numbers.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .dependency import DependencyScores, accumulate_dependencies
from .graph import Graph
from .pairs import PairAccumulator, PairMap, pack
from .spdag import SpDag, build_sp_dag

log = logging.getLogger(__name__)

try:
    if os.environ.get("COBETWEEN_PURE_PYTHON") == "1":
        raise ImportError("disabled by COBETWEEN_PURE_PYTHON")
    from . import _core
except ImportError as exc:  # pragma: no cover - depends on build
    _core = None
    log.debug("compiled core unavailable: %s", exc)

BACKENDS = ("cython", "python") if _core is not None else ("python",)
DEFAULT_BACKEND = BACKENDS[0]

# Per-worker dense n x n accumulators are used while their total stays under
# this many bytes; beyond it the compiled core switches to hash maps.
DENSE_BUDGET_BYTES = 2 * 1024**3

Convention = Literal["unordered", "ordered"]
_DIVISOR = {"unordered": 2.0, "ordered": 1.0}


@dataclass(frozen=True)
class CentralityResult:
    """``betweenness[v]`` and ``cobetweenness[u, v]`` under one pair convention.

    ``"unordered"`` counts each endpoint pair {s, t} once; ``"ordered"``
    counts (s, t) and (t, s) separately and is exactly twice as large.
    """

    vertices: tuple[str, ...]
    betweenness: np.ndarray
    cobetweenness: PairAccumulator
    convention: str = "unordered"

    @property
    def n_v(self) -> int:
        return len(self.vertices)

    def cob_dense(self) -> np.ndarray:
        return self.cobetweenness.to_dense(self.n_v)


def accumulate_pair_contributions(dag: SpDag, dep: DependencyScores, acc: PairAccumulator) -> None:
    """Add one source's raw pair contributions to ``acc`` in place."""
    if dag.source != dep.source:
        raise ValueError("DAG and dependency scores come from different sources")
    pending: dict[int, float] = {}
    _walk_geodesics(dag.children, dag.sigma.tolist(), dep.delta.tolist(), dag.source, pending)
    acc.add_packed(pending)


def _walk_geodesics(children, sigma, delta, s, out: dict[int, float]) -> None:
    # Iterative DFS over every geodesic out of s. ``path`` holds the interior
    # vertices of the current geodesic prefix (the source is never on it).
    # A vertex with delta == 0 has no children, so it is neither credited
    # nor descended into.
    path: list[int] = []
    frames = [iter(children[s])]
    while frames:
        w = next(frames[-1], None)
        if w is None:
            frames.pop()
            if path:
                path.pop()
            continue
        d = delta[w]
        if d > 0.0:
            val = d / sigma[w]
            for u in path:
                k = pack(u, w) if u < w else pack(w, u)
                out[k] = out.get(k, 0.0) + val
            path.append(w)
            frames.append(iter(children[w]))


def _python_batch(g: Graph, sources: list[int], tol: float):
    b = np.zeros(g.n_v)
    pending: dict[int, float] = {}
    for s in sources:
        dag = build_sp_dag(g, s, tol)
        dep = accumulate_dependencies(dag)
        reach = dag.settle_order[1:]
        b[reach] += dep.delta[reach]
        _walk_geodesics(dag.children, dag.sigma.tolist(), dep.delta.tolist(), s, pending)
    acc = PairAccumulator()
    acc.add_packed(pending)
    return b, acc


def _cython_batch(g: Graph, sources: list[int], tol: float, dense: bool):
    n = g.n_v
    b = np.zeros(n)
    src = np.asarray(sources, dtype=np.int64)
    args = (g.indptr, g.indices, g.weights, g.weighted, float(tol), src, b)
    if dense:
        mat = np.zeros((n, n))
        _core.run_sources(*args, mat)
        return b, PairAccumulator.from_dense(mat)
    keys, vals = _core.run_sources(*args)
    return b, PairAccumulator(keys, vals)


def compute_all(
    g: Graph,
    convention: Convention = "unordered",
    workers: int = 1,
    tol: float = 0.0,
    backend: str | None = None,
) -> CentralityResult:
    """Betweenness of every vertex and co-betweenness of every pair.

    ``tol`` is the absolute tie tolerance for weighted distances. The
    result does not depend on ``workers`` beyond floating summation order.
    """
    if convention not in _DIVISOR:
        raise ValueError(f"unknown convention {convention!r}")
    if workers < 1:
        raise ValueError("workers must be a positive integer")
    backend = backend or DEFAULT_BACKEND
    if backend not in BACKENDS:
        raise ValueError(f"backend {backend!r} unavailable; have {BACKENDS}")

    n = g.n_v
    workers = max(1, min(workers, n))
    chunks = [list(range(i, n, workers)) for i in range(workers)]
    if backend == "cython":
        dense = n * n * 8 * workers <= DENSE_BUDGET_BYTES
        if workers == 1:
            parts = [_cython_batch(g, chunks[0], tol, dense)]
        else:
            with ThreadPoolExecutor(workers) as pool:
                parts = list(pool.map(lambda c: _cython_batch(g, c, tol, dense), chunks))
    else:
        if workers == 1:
            parts = [_python_batch(g, chunks[0], tol)]
        else:
            with ProcessPoolExecutor(workers) as pool:
                parts = list(pool.map(_python_batch, [g] * workers, chunks, [tol] * workers))

    b = np.zeros(n)
    acc = PairAccumulator()
    for pb, pacc in parts:
        b += pb
        acc = acc.merge(pacc)
    k = _DIVISOR[convention]
    return CentralityResult(g.vertices, b / k, acc.scaled(1.0 / k), convention)


def corr_matrix(r: CentralityResult) -> PairMap:
    """Co-betweenness over the geometric mean of the two betweenness values."""
    cob = r.cobetweenness
    keys, vals = cob.keys_array, cob.values_array
    us, vs = keys >> 32, keys & 0xFFFFFFFF
    denom = np.sqrt(r.betweenness[us] * r.betweenness[vs])
    out = np.divide(vals, denom, out=np.zeros_like(vals), where=denom > 0)
    return cob.map_values(out)


def cond_matrix(r: CentralityResult) -> PairMap:
    """Directed map whose ``(u, v)`` entry is ``C(u, v) / B(v)``."""
    cob = r.cobetweenness
    keys, vals = cob.keys_array, cob.values_array
    us, vs = keys >> 32, keys & 0xFFFFFFFF
    b = r.betweenness
    # (u, v) -> C / B[v]; (v, u) -> C / B[u]
    fwd = np.divide(vals, b[vs], out=np.zeros_like(vals), where=b[vs] > 0)
    bwd = np.divide(vals, b[us], out=np.zeros_like(vals), where=b[us] > 0)
    all_keys = np.concatenate([keys, (vs << 32) | us])
    all_vals = np.concatenate([fwd, bwd])
    order = np.argsort(all_keys, kind="stable")
    return PairMap(all_keys[order], all_vals[order], symmetric=False)
