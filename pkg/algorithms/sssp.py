# algorithms/sssp.py
"""
Single-source shortest paths, active-set Bellman-Ford
"""

from logging import getLogger
from typing import Any, List, Optional, Tuple

import numpy as np

from core.dcsc import Graph
from core.engine import IterationStats, run_graph_program
from core.types import EngineConfig, GraphProgram, ScatterDirection
from graphio.preprocess import check_non_negative

from .base import AlgorithmResult, check_vertex, engine_config_for, option
from .bfs import init_distances

logger = getLogger(__name__)

ALGORITHM_METADATA = {
    "name": "sssp",
    "is_algorithm": True,
    "enabled": True,
    "description": "Weighted shortest path distances from a source",
    "version": "1.0.0",
    "priority": 30,
    "preprocess": "none",
    "weighted": True,
    "requires": ["source"],
}


class SsspProgram(GraphProgram):
    """(min, +) semiring; inf + w stays inf"""

    name = "sssp"
    direction = ScatterDirection.OUT
    reduce_identity = np.inf
    vectorized = True
    reduce_ufunc = np.minimum

    def send_message(self, vertex, prop):
        return prop

    def process_message(self, message, edge_value, dst_prop):
        return message + edge_value

    def reduce(self, accumulator, processed):
        return min(accumulator, processed)

    def apply(self, reduced, prop):
        return min(prop, reduced)

    def send_batch(self, vertices, props):
        return vertices, props

    def process_batch(self, messages, edge_values, dst_props):
        return messages + edge_values

    def apply_batch(self, reduced, props):
        return np.minimum(props, reduced)


def check_weights(graph: Graph) -> None:
    """Reject negative edge weights"""
    check_non_negative(graph.edges())


def run_sssp(
    graph: Graph,
    source: int,
    engine_config: Optional[EngineConfig] = None,
    max_iterations: Optional[int] = None,
) -> Tuple[np.ndarray, List[IterationStats]]:
    """Distances plus superstep history"""
    source = check_vertex(graph, source, "source")
    check_weights(graph)
    init_distances(graph, source)
    # n - 1 relaxation rounds, one more to see the frontier empty
    budget = max_iterations if max_iterations is not None else graph.num_vertices + 1
    store, history = run_graph_program(
        graph, SsspProgram(), engine_config_for(engine_config, budget)
    )
    return store.properties.copy(), history


def sssp(graph: Graph, source: int, engine_config: Optional[EngineConfig] = None) -> np.ndarray:
    """Weighted distance per vertex, inf when unreachable"""
    distances, _ = run_sssp(graph, source, engine_config)
    return distances


def run(graph: Graph, options: Any, engine_config: EngineConfig) -> AlgorithmResult:
    """Registry entry point"""
    distances, history = run_sssp(
        graph, option(options, "source"), engine_config, option(options, "max_iters")
    )
    reached = int(np.count_nonzero(np.isfinite(distances)))
    logger.info("SSSP: %d supersteps, %d vertices reached", len(history), reached)
    return AlgorithmResult(values=distances, history=history, summary={"reached": reached})
