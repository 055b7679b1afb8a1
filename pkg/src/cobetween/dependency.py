"""Per-source dependency scores by backward accumulation over an SpDag."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spdag import SpDag


@dataclass(frozen=True)
class DependencyScores:
    """``delta[v]`` is the summed fraction of geodesics from ``source`` to
    every target other than ``v`` that pass through ``v``.

    ``delta[source]`` holds whatever the recursion yields there and is never
    read downstream.
    """

    source: int
    delta: np.ndarray


def accumulate_dependencies(dag: SpDag) -> DependencyScores:
    sigma = dag.sigma.tolist()
    delta = [0.0] * len(sigma)
    children = dag.children
    for v in reversed(dag.settle_order):
        acc = 0.0
        sv = sigma[v]
        for w in children[v]:
            acc += sv / sigma[w] * (1.0 + delta[w])
        delta[v] = acc
    return DependencyScores(dag.source, np.array(delta))
