"""Spectral centralities of uniform hypergraphs with undirected, cyclic, directed or k-step edges."""

from .connectivity import b_uniform_core, induced_matrix, is_strongly_connected, scc
from .errors import HypergraphError, NotConverged
from .hypergraph import (
    CyclicEdge,
    Digraph,
    DirectedEdge,
    Hypergraph,
    NodeRegistry,
    ProjectionGraph,
    UndirectedEdge,
    project,
    tail_uniformity,
    uniformity,
)
from .ranking import rank, spearman, top_n_table, topk_curve
from .spectral import (
    CentralityResult,
    SolverConfig,
    ec_f_hypergraph,
    ec_projection,
    hec,
    hec_directed,
    kstep_centrality,
)
from .tensor import KStepOperator, OrbitTensor, SymmetryClass, apply, component, from_hypergraph, kstep_apply, transpose

__version__ = "0.1.0"

__all__ = [
    "b_uniform_core",
    "induced_matrix",
    "is_strongly_connected",
    "scc",
    "HypergraphError",
    "NotConverged",
    "CyclicEdge",
    "Digraph",
    "DirectedEdge",
    "Hypergraph",
    "NodeRegistry",
    "ProjectionGraph",
    "UndirectedEdge",
    "project",
    "tail_uniformity",
    "uniformity",
    "rank",
    "spearman",
    "top_n_table",
    "topk_curve",
    "CentralityResult",
    "SolverConfig",
    "ec_f_hypergraph",
    "ec_projection",
    "hec",
    "hec_directed",
    "kstep_centrality",
    "KStepOperator",
    "OrbitTensor",
    "SymmetryClass",
    "apply",
    "component",
    "from_hypergraph",
    "kstep_apply",
    "transpose",
    "__version__",
]
