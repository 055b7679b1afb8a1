"""Seeded random graphs and the geodesic-multiplicity scaling study."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .engine import compute_all
from .graph import Graph
from .spdag import build_sp_dag


def gen_er(n: int, p_edge: float, seed: int) -> Graph:
    """G(n, p): every unordered pair is an edge independently with probability ``p_edge``."""
    if n < 2 or not 0.0 <= p_edge <= 1.0:
        raise ValueError("need n >= 2 and 0 <= p_edge <= 1")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < p_edge
    edges = [(int(u), int(v), 1.0) for u, v in zip(iu[keep], ju[keep])]
    return Graph.from_edges([str(i) for i in range(n)], edges)


def gen_ba(n: int, m: int, seed: int) -> Graph:
    """Preferential attachment grown from a star on ``m + 1`` vertices.

    Each new vertex links to ``m`` distinct existing vertices drawn with
    probability proportional to their current degree.
    """
    if not 1 <= m < n:
        raise ValueError("need 1 <= m < n")
    rng = np.random.default_rng(seed)
    edges = [(0, v, 1.0) for v in range(1, m + 1)]
    # each vertex appears once per incident edge end
    ends = [0] * m + list(range(1, m + 1))
    for v in range(m + 1, n):
        targets: list[int] = []
        while len(targets) < m:
            x = ends[int(rng.integers(len(ends)))]
            if x not in targets:
                targets.append(x)
        for x in targets:
            edges.append((x, v, 1.0))
            ends.extend((x, v))
    return Graph.from_edges([str(i) for i in range(n)], edges)


def generate(model: str, n: int, params: dict, seed: int) -> Graph:
    if model == "er":
        if "p" in params:
            p = params["p"]
        else:
            p = min(1.0, params.get("mean_degree", 6.0) / (n - 1))
        return gen_er(n, p, seed)
    if model == "ba":
        return gen_ba(n, int(params.get("m", 2)), seed)
    if model == "tree":
        return gen_ba(n, 1, seed)
    raise ValueError(f"unknown model {model!r}; expected er, ba or tree")


def mean_geodesic_multiplicity(g: Graph) -> float:
    """Mean over targets v of (1/n) * sum over all u of sigma_uv.

    The inner sum runs over every u, so it includes sigma_vv = 1 and zero
    counts for unreachable u; the result equals sum(sigma) / n**2.
    """
    total = sum(float(build_sp_dag(g, s).sigma.sum()) for s in range(g.n_v))
    return total / g.n_v**2


@dataclass
class ScalingReport:
    model: str
    sizes: list[int]
    mean_sigma: list[float]
    fitted_exponent: float
    runtimes_sec: list[float]
    workers: int = 1
    params: dict = field(default_factory=dict)

    def to_json(self) -> str:
        data = asdict(self)
        data.pop("params")
        return json.dumps(data, indent=2)


def fit_exponent(sizes, values) -> float:
    """Slope of log(values) against log(sizes) by least squares."""
    slope, _ = np.polyfit(np.log(sizes), np.log(values), 1)
    return float(slope)


def scaling_study(
    model: str,
    sizes,
    params: dict | None = None,
    seed: int = 0,
    workers: int = 1,
    replicates: int = 1,
    timing_repeats: int = 1,
    time_compute: bool = True,
) -> ScalingReport:
    """Mean geodesic multiplicity and compute_all runtime along a size sweep.

    ``replicates`` graphs are drawn per size (seeds ``seed + k``) and their
    multiplicities averaged; runtimes are the median of ``timing_repeats``
    runs on the first replicate.
    """
    params = dict(params or {})
    sizes = [int(n) for n in sizes]
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be strictly increasing")
    mean_sigma, runtimes = [], []
    for i, n in enumerate(sizes):
        graphs = [generate(model, n, params, seed + 1000 * i + k) for k in range(replicates)]
        mean_sigma.append(float(np.mean([mean_geodesic_multiplicity(g) for g in graphs])))
        if time_compute:
            times = []
            for _ in range(timing_repeats):
                t0 = time.perf_counter()
                compute_all(graphs[0], workers=workers)
                times.append(time.perf_counter() - t0)
            runtimes.append(float(np.median(times)))
        else:
            runtimes.append(0.0)
    return ScalingReport(model, sizes, mean_sigma, fit_exponent(sizes, mean_sigma), runtimes, workers, params)
