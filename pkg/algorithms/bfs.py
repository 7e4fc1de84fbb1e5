# algorithms/bfs.py
"""
Breadth-first search hop distances
"""

from logging import getLogger
from typing import Any, List, Optional, Tuple

import numpy as np

from core.dcsc import Graph
from core.engine import IterationStats, run_graph_program
from core.types import EngineConfig, GraphProgram, ScatterDirection, VertexPropertyStore

from .base import AlgorithmResult, check_vertex, engine_config_for, option

logger = getLogger(__name__)

ALGORITHM_METADATA = {
    "name": "bfs",
    "is_algorithm": True,
    "enabled": True,
    "description": "Hop distance from a root over the symmetrized graph",
    "version": "1.0.0",
    "priority": 40,
    "preprocess": "symmetrize",
    "weighted": False,
    "requires": ["source"],
}


class BfsProgram(GraphProgram):
    """(min, +1) traversal"""

    name = "bfs"
    direction = ScatterDirection.OUT
    reduce_identity = np.inf
    vectorized = True
    reduce_ufunc = np.minimum

    def send_message(self, vertex, prop):
        return prop

    def process_message(self, message, edge_value, dst_prop):
        return message + 1.0

    def reduce(self, accumulator, processed):
        return min(accumulator, processed)

    def apply(self, reduced, prop):
        return min(prop, reduced)

    def send_batch(self, vertices, props):
        return vertices, props

    def process_batch(self, messages, edge_values, dst_props):
        return messages + 1.0

    def apply_batch(self, reduced, props):
        return np.minimum(props, reduced)


def init_distances(graph: Graph, source: int) -> VertexPropertyStore:
    """Source at 0 and active, everything else at inf"""
    store = VertexPropertyStore.full(graph.num_vertices, np.inf)
    store.properties[source] = 0.0
    store.activate([source])
    graph.properties = store
    return store


def run_bfs(
    graph: Graph,
    root: int,
    engine_config: Optional[EngineConfig] = None,
    max_iterations: Optional[int] = None,
) -> Tuple[np.ndarray, List[IterationStats]]:
    """Distances plus superstep history"""
    root = check_vertex(graph, root, "root")
    init_distances(graph, root)
    # a BFS frontier empties after at most n supersteps
    budget = max_iterations if max_iterations is not None else graph.num_vertices + 1
    config = engine_config_for(engine_config, budget)
    store, history = run_graph_program(graph, BfsProgram(), config)
    return store.properties.copy(), history


def bfs(graph: Graph, root: int, engine_config: Optional[EngineConfig] = None) -> np.ndarray:
    """Hop distance per vertex, inf when unreachable"""
    distances, _ = run_bfs(graph, root, engine_config)
    return distances


def run(graph: Graph, options: Any, engine_config: EngineConfig) -> AlgorithmResult:
    """Registry entry point"""
    distances, history = run_bfs(
        graph, option(options, "source"), engine_config, option(options, "max_iters")
    )
    reached = int(np.count_nonzero(np.isfinite(distances)))
    logger.info("BFS: %d supersteps, %d vertices reached", len(history), reached)
    return AlgorithmResult(values=distances, history=history, summary={"reached": reached})
