"""Vertex betweenness, pairwise co-betweenness and derived control measures."""

from .dependency import DependencyScores, accumulate_dependencies
from .engine import (
    BACKENDS,
    DEFAULT_BACKEND,
    CentralityResult,
    accumulate_pair_contributions,
    compute_all,
    cond_matrix,
    corr_matrix,
)
from .fixtures import load_fixture
from .graph import ComponentReport, EdgeListError, Graph, components, parse_edgelist, serialize_edgelist
from .pairs import PairAccumulator, PairMap
from .spdag import SpDag, build_sp_dag, count_total_geodesics

__version__ = "0.1.0"

__all__ = [
    "BACKENDS",
    "DEFAULT_BACKEND",
    "CentralityResult",
    "ComponentReport",
    "DependencyScores",
    "EdgeListError",
    "Graph",
    "PairAccumulator",
    "PairMap",
    "SpDag",
    "accumulate_dependencies",
    "accumulate_pair_contributions",
    "build_sp_dag",
    "components",
    "compute_all",
    "cond_matrix",
    "corr_matrix",
    "count_total_geodesics",
    "load_fixture",
    "parse_edgelist",
    "serialize_edgelist",
]
