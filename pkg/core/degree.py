# core/degree.py
"""
Vertex degrees as G^T·1 and G·1
"""

from typing import Optional

import numpy as np

from .dcsc import Graph
from .engine import generalized_spmv
from .sparse import make_sparse_vector
from .types import GraphProgram, ScatterDirection


class DegreeProgram(GraphProgram):
    """Every edge contributes 1; edge values are ignored"""

    name = "degree"
    reduce_identity = 0
    message_dtype = np.int64
    reduced_dtype = np.int64
    vectorized = True
    reduce_ufunc = np.add

    def __init__(self, direction: ScatterDirection = ScatterDirection.OUT):
        self.direction = direction

    def send_message(self, vertex, prop):
        return 1

    def process_message(self, message, edge_value, dst_prop):
        return 1

    def reduce(self, accumulator, processed):
        return accumulator + processed

    def apply(self, reduced, prop):
        return reduced

    def send_batch(self, vertices, props):
        return vertices, np.ones(len(vertices), dtype=np.int64)

    def process_batch(self, messages, edge_values, dst_props):
        return np.ones(len(edge_values), dtype=np.int64)

    def apply_batch(self, reduced, props):
        return reduced


def degree_vector(
    graph: Graph, direction: ScatterDirection, kind: Optional[str] = None
) -> np.ndarray:
    """
    In-degree (G^T·1), out-degree (G·1), or their sum for BOTH.

    Counting in-edges means every vertex messages its out-neighbours, so the
    IN count scatters along OUT edges and vice versa.
    """
    scatter = {
        ScatterDirection.IN: ScatterDirection.OUT,
        ScatterDirection.OUT: ScatterDirection.IN,
        ScatterDirection.BOTH: ScatterDirection.BOTH,
    }[direction]
    n = graph.num_vertices
    x = make_sparse_vector(n, np.int64, kind=kind or "bitvector")
    x.set_many(np.arange(n, dtype=np.int64), np.ones(n, dtype=np.int64))

    y = generalized_spmv(graph, x, DegreeProgram(scatter))
    degrees = np.zeros(n, dtype=np.int64)
    received = y.indices()
    degrees[received] = y.values_at(received)
    return degrees
