# core/__init__.py
"""
Graph engine core
"""

from .dcsc import DcscPartition, Graph, build_graph, iterate_column, transpose_triples
from .degree import degree_vector
from .engine import (
    GraphEngine,
    IterationStats,
    apply_and_activate,
    generalized_spmv,
    generate_messages,
    run_graph_program,
)
from .errors import (
    GraphBuildError,
    GraphMatError,
    InputDataError,
    ProgramError,
    UsageError,
    VertexRangeError,
)
from .sparse import SparseVector, TupleSparseVector, make_sparse_vector
from .types import (
    EdgeList,
    EdgeTriple,
    EngineConfig,
    GraphProgram,
    ScatterDirection,
    VertexPropertyStore,
)

__all__ = [
    "DcscPartition",
    "EdgeList",
    "EdgeTriple",
    "EngineConfig",
    "Graph",
    "GraphBuildError",
    "GraphEngine",
    "GraphMatError",
    "GraphProgram",
    "InputDataError",
    "IterationStats",
    "ProgramError",
    "ScatterDirection",
    "SparseVector",
    "TupleSparseVector",
    "UsageError",
    "VertexPropertyStore",
    "VertexRangeError",
    "apply_and_activate",
    "build_graph",
    "degree_vector",
    "generalized_spmv",
    "generate_messages",
    "iterate_column",
    "make_sparse_vector",
    "run_graph_program",
    "transpose_triples",
]
