# algorithms/triangles.py
"""
Triangle counting as two one-superstep vertex programs over a DAG orientation
"""

from dataclasses import dataclass
from heapq import merge
from logging import getLogger
from typing import Any, List, Sequence, Tuple

import numpy as np

from core.dcsc import Graph
from core.engine import IterationStats, run_graph_program
from core.errors import InputDataError
from core.types import EngineConfig, GraphProgram, ScatterDirection, VertexPropertyStore

from .base import AlgorithmResult, engine_config_for

logger = getLogger(__name__)

ALGORITHM_METADATA = {
    "name": "tc",
    "is_algorithm": True,
    "enabled": True,
    "description": "Exact triangle count (symmetrize, then keep src < dst)",
    "version": "1.0.0",
    "priority": 20,
    "preprocess": "dagify",
    "weighted": False,
    "requires": [],
}


@dataclass(frozen=True)
class TriangleState:
    """Sorted in-neighbour ids and the triangles closed at this vertex"""

    neighbor_ids: Tuple[int, ...] = ()
    local_count: int = 0


def sorted_intersection_size(a: Sequence[int], b: Sequence[int]) -> int:
    """|a ∩ b| for strictly ascending sequences"""
    if not a or not b:
        return 0
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    small = np.asarray(small, dtype=np.int64)
    large = np.asarray(large, dtype=np.int64)
    pos = np.minimum(np.searchsorted(large, small), len(large) - 1)
    return int(np.count_nonzero(large[pos] == small))


class NeighborListProgram(GraphProgram):
    """Each vertex learns its in-neighbour ids"""

    name = "tc-neighbors"
    direction = ScatterDirection.OUT
    reduce_identity: Tuple[int, ...] = ()
    message_dtype = np.int64
    reduced_dtype = object

    def send_message(self, vertex, prop):
        return vertex

    def process_message(self, message, edge_value, dst_prop):
        return (int(message),)

    def reduce(self, accumulator, processed):
        return tuple(merge(accumulator, processed))

    def apply(self, reduced, prop):
        return TriangleState(tuple(sorted(reduced)), prop.local_count)


class IntersectionProgram(GraphProgram):
    """Each vertex intersects received lists with its own"""

    name = "tc-intersect"
    direction = ScatterDirection.OUT
    reduce_identity = 0
    message_dtype = object
    reduced_dtype = np.int64

    def send_message(self, vertex, prop):
        return prop.neighbor_ids

    def process_message(self, message, edge_value, dst_prop):
        return sorted_intersection_size(message, dst_prop.neighbor_ids)

    def reduce(self, accumulator, processed):
        return accumulator + processed

    def apply(self, reduced, prop):
        return TriangleState(prop.neighbor_ids, int(reduced))


def check_upper_triangular(graph: Graph) -> None:
    """Every edge must point from a lower to a higher id"""
    edges = graph.edges()
    bad = np.flatnonzero(edges.src >= edges.dst)
    if bad.size:
        i = int(bad[0])
        raise InputDataError(
            f"graph is not upper-triangular: edge ({edges.src[i] + 1} -> {edges.dst[i] + 1}); "
            "symmetrize and dagify first"
        )


def run_triangle_count(
    graph: Graph, engine_config: EngineConfig | None = None
) -> Tuple[int, np.ndarray, List[IterationStats]]:
    """Total, per-vertex local counts and the history of both phases"""
    check_upper_triangular(graph)
    config = engine_config_for(engine_config, 1)

    graph.properties = VertexPropertyStore.full(graph.num_vertices, TriangleState(), dtype=object)
    graph.properties.activate_all()
    _, history = run_graph_program(graph, NeighborListProgram(), config)

    graph.properties.activate_all()
    store, second = run_graph_program(graph, IntersectionProgram(), config)
    history.extend(second)

    local = np.fromiter(
        (state.local_count for state in store.properties), dtype=np.int64, count=len(store)
    )
    return int(local.sum()), local, history


def triangle_count(graph: Graph, engine_config: EngineConfig | None = None) -> int:
    """Number of triangles in a DAG-oriented graph"""
    total, _, _ = run_triangle_count(graph, engine_config)
    return total


# pylint: disable-next=unused-argument
def run(graph: Graph, options: Any, engine_config: EngineConfig) -> AlgorithmResult:
    """Registry entry point"""
    total, local, history = run_triangle_count(graph, engine_config)
    logger.info("Triangle count: %d", total)
    return AlgorithmResult(values=local, history=history, summary={"triangles": total})
