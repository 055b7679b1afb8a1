"""Undirected graph model, edge-list parsing and connected components."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

log = logging.getLogger(__name__)


class EdgeListError(ValueError):
    """Raised for malformed edge-list input; carries the 1-based line number."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected graph with stable string labels.

    Adjacency is held in CSR form (``indptr``, ``indices``, ``weights``);
    vertex ``i`` has neighbours ``indices[indptr[i]:indptr[i+1]]``.
    Neighbour order follows edge insertion order.
    """

    vertices: tuple[str, ...]
    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray
    weighted: bool = False
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.vertices)})
        for arr in (self.indptr, self.indices, self.weights):
            arr.setflags(write=False)

    @classmethod
    def from_edges(
        cls,
        vertices: Sequence[str],
        edges: Iterable[tuple[int, int, float]],
        weighted: bool = False,
    ) -> "Graph":
        """Build from integer edges ``(u, v, w)``; duplicates must already be removed."""
        n = len(vertices)
        if len(set(vertices)) != n:
            raise ValueError("vertex labels must be unique")
        adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for u, v, w in edges:
            if u == v:
                raise ValueError(f"self-loop on vertex {vertices[u]!r}")
            w = float(w) if weighted else 1.0
            if not w > 0:
                raise ValueError(f"non-positive weight {w} on edge {vertices[u]!r}-{vertices[v]!r}")
            adj[u].append((v, w))
            adj[v].append((u, w))
        indptr = np.zeros(n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(a) for a in adj])
        indices = np.fromiter((v for a in adj for v, _ in a), dtype=np.int64, count=int(indptr[-1]))
        weights = np.fromiter((w for a in adj for _, w in a), dtype=np.float64, count=int(indptr[-1]))
        return cls(tuple(vertices), indptr, indices, weights, weighted)

    @property
    def n_v(self) -> int:
        return len(self.vertices)

    @property
    def n_e(self) -> int:
        return int(self.indptr[-1]) // 2

    def index(self, label: str) -> int:
        return self._index[label]

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def adjacency(self, v: int) -> list[tuple[int, float]]:
        lo, hi = self.indptr[v], self.indptr[v + 1]
        return list(zip(self.indices[lo:hi].tolist(), self.weights[lo:hi].tolist()))

    def edges(self) -> list[tuple[int, int, float]]:
        """Each undirected edge once as ``(u, v, w)`` with ``u < v``, sorted."""
        out = []
        for u in range(self.n_v):
            for v, w in self.adjacency(u):
                if u < v:
                    out.append((u, v, w))
        out.sort()
        return out

    def weight(self, u: int, v: int) -> float | None:
        for x, w in self.adjacency(u):
            if x == v:
                return w
        return None

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``i`` moved to position ``perm[i]``."""
        labels = [""] * self.n_v
        for i, p in enumerate(perm):
            labels[p] = self.vertices[i]
        edges = [(perm[u], perm[v], w) for u, v, w in self.edges()]
        return Graph.from_edges(labels, edges, self.weighted)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.weighted == other.weighted
            and self.edges() == other.edges()
        )

    def __repr__(self) -> str:
        kind = "weighted" if self.weighted else "unweighted"
        return f"Graph(n_v={self.n_v}, n_e={self.n_e}, {kind})"


def parse_edgelist(text: str | Iterable[str], weighted: bool = False) -> Graph:
    """Parse whitespace-separated ``label label [weight]`` lines.

    Blank lines and lines starting with ``#`` are skipped. Vertex indices
    follow first appearance. Duplicate edges are collapsed (first weight
    wins) with a warning; self-loops, bad weights and ragged column counts
    raise :class:`EdgeListError`.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    labels: dict[str, int] = {}
    seen: dict[tuple[int, int], float] = {}
    edges: list[tuple[int, int, float]] = []
    ncols = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise EdgeListError(f"expected 2 or 3 columns, got {len(parts)}", lineno)
        if ncols is None:
            ncols = len(parts)
        elif len(parts) != ncols:
            raise EdgeListError(f"inconsistent column count ({len(parts)} vs {ncols})", lineno)
        a, b = parts[0], parts[1]
        if a == b:
            raise EdgeListError(f"self-loop on {a!r}", lineno)
        w = 1.0
        if weighted:
            if len(parts) != 3:
                raise EdgeListError("weighted mode needs a third weight column", lineno)
            try:
                w = float(parts[2])
            except ValueError:
                raise EdgeListError(f"non-numeric weight {parts[2]!r}", lineno) from None
            if not (w > 0 and np.isfinite(w)):
                raise EdgeListError(f"weight must be positive and finite, got {parts[2]!r}", lineno)
        for lab in (a, b):
            if lab not in labels:
                labels[lab] = len(labels)
        u, v = labels[a], labels[b]
        key = (min(u, v), max(u, v))
        if key in seen:
            log.warning("line %d: duplicate edge %s-%s collapsed", lineno, a, b)
            continue
        seen[key] = w
        edges.append((u, v, w))
    return Graph.from_edges(list(labels), edges, weighted)


def serialize_edgelist(g: Graph, header: str | None = None) -> str:
    """Inverse of :func:`parse_edgelist`.

    Edges are ordered so that first appearance reproduces the vertex
    indices: vertex ``k`` is introduced by an edge to an earlier vertex or
    together with ``k + 1``. Graphs with isolated vertices, or whose order
    cannot arise from any edge list, raise ``ValueError``.
    """
    out = []
    if header:
        out.extend(f"# {line}" if line else "#" for line in header.splitlines())
    remaining = {(u, v): w for u, v, w in g.edges()}

    def line(a: int, b: int) -> None:
        w = remaining.pop((min(a, b), max(a, b)))
        cols = [g.vertices[a], g.vertices[b]]
        if g.weighted:
            cols.append(repr(w))
        out.append(" ".join(cols))

    k = 0
    while k < g.n_v:
        nbrs = g.neighbors(k).tolist()
        back = [j for j in nbrs if j < k]
        if back:
            line(back[0], k)
            k += 1
        elif k + 1 in nbrs:
            line(k, k + 1)
            k += 2
        else:
            raise ValueError(f"vertex {g.vertices[k]!r} cannot be placed at index {k} by an edge list")
    for u, v in list(remaining):
        line(u, v)
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class ComponentReport:
    component_count: int
    component_id: np.ndarray
    sizes: list[int]


def components(g: Graph) -> ComponentReport:
    """Connected components; ids are assigned in order of lowest vertex index."""
    comp = np.full(g.n_v, -1, dtype=np.int64)
    sizes = []
    for root in range(g.n_v):
        if comp[root] >= 0:
            continue
        cid = len(sizes)
        comp[root] = cid
        stack = [root]
        size = 0
        while stack:
            x = stack.pop()
            size += 1
            for y in g.neighbors(x).tolist():
                if comp[y] < 0:
                    comp[y] = cid
                    stack.append(y)
        sizes.append(size)
    return ComponentReport(len(sizes), comp, sizes)
