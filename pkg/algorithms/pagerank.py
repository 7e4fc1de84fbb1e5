# algorithms/pagerank.py
"""
PageRank: PR(v) = r + (1 - r) * sum(PR(u) / degree(u)) over in-neighbours u
"""

from dataclasses import dataclass
from logging import getLogger
from typing import Any, List, Optional, Tuple

import numpy as np

from core.dcsc import Graph
from core.engine import IterationStats, run_graph_program
from core.types import EngineConfig, GraphProgram, ScatterDirection, VertexPropertyStore

from .base import AlgorithmResult, engine_config_for, option

logger = getLogger(__name__)

ALGORITHM_METADATA = {
    "name": "pagerank",
    "is_algorithm": True,
    "enabled": True,
    "description": "Non-normalized PageRank, initial ranks 1.0",
    "version": "1.0.0",
    "priority": 50,
    "preprocess": "none",
    "weighted": False,
    "requires": [],
}

PAGERANK_DTYPE = np.dtype([("rank", np.float64), ("out_degree", np.int64)])


@dataclass(frozen=True)
class PageRankConfig:
    """Random-surf probability and iteration budget"""

    r: float = 0.15
    max_iterations: int = 100
    tolerance: Optional[float] = None

    def __post_init__(self):
        if not 0.0 < self.r < 1.0:
            raise ValueError(f"r must lie in (0, 1), got {self.r}")
        if self.max_iterations < 0:
            raise ValueError(f"max_iterations must be >= 0, got {self.max_iterations}")
        if self.tolerance is not None and self.tolerance <= 0:
            raise ValueError(f"tolerance must be > 0, got {self.tolerance}")


class PageRankProgram(GraphProgram):
    """Dangling vertices stay silent; their mass is dropped"""

    name = "pagerank"
    direction = ScatterDirection.OUT
    reduce_identity = 0.0
    vectorized = True
    reduce_ufunc = np.add

    def __init__(self, r: float, tolerance: Optional[float] = None):
        self.r = r
        self.tolerance = tolerance

    def send_message(self, vertex, prop):
        if prop["out_degree"] == 0:
            return None
        return prop["rank"] / prop["out_degree"]

    def process_message(self, message, edge_value, dst_prop):
        return message

    def reduce(self, accumulator, processed):
        return accumulator + processed

    def apply(self, reduced, prop):
        return (self.r + (1.0 - self.r) * reduced, prop["out_degree"])

    def send_batch(self, vertices, props):
        speaking = props["out_degree"] > 0
        return vertices[speaking], props["rank"][speaking] / props["out_degree"][speaking]

    def process_batch(self, messages, edge_values, dst_props):
        return messages

    def apply_batch(self, reduced, props):
        updated = props.copy()
        updated["rank"] = self.r + (1.0 - self.r) * reduced
        return updated

    def converged(self, old, new):
        if self.tolerance is None:
            return False
        if len(new) == 0:
            return True
        return float(np.max(np.abs(new["rank"] - old["rank"]))) < self.tolerance


def init_pagerank(graph: Graph) -> VertexPropertyStore:
    """Rank 1.0 everywhere, out-degrees precomputed, all vertices active"""
    props = np.zeros(graph.num_vertices, dtype=PAGERANK_DTYPE)
    props["rank"] = 1.0
    props["out_degree"] = graph.out_degrees()
    graph.properties = VertexPropertyStore(props)
    graph.properties.activate_all()
    return graph.properties


def run_pagerank(
    graph: Graph, cfg: PageRankConfig, engine_config: Optional[EngineConfig] = None
) -> Tuple[np.ndarray, List[IterationStats]]:
    """Ranks plus superstep history"""
    init_pagerank(graph)
    program = PageRankProgram(cfg.r, cfg.tolerance)
    store, history = run_graph_program(
        graph, program, engine_config_for(engine_config, cfg.max_iterations)
    )
    return store.properties["rank"].copy(), history


def pagerank(
    graph: Graph, cfg: Optional[PageRankConfig] = None, engine_config: Optional[EngineConfig] = None
) -> np.ndarray:
    """Rank per vertex"""
    ranks, _ = run_pagerank(graph, cfg or PageRankConfig(), engine_config)
    return ranks


def run(graph: Graph, options: Any, engine_config: EngineConfig) -> AlgorithmResult:
    """Registry entry point"""
    cfg = PageRankConfig(
        r=option(options, "damping", 0.15),
        max_iterations=option(options, "max_iters", engine_config.max_iterations),
        tolerance=option(options, "tolerance"),
    )
    ranks, history = run_pagerank(graph, cfg, engine_config)
    logger.info("PageRank: %d supersteps, rank sum %.6f", len(history), float(ranks.sum()))
    return AlgorithmResult(values=ranks, history=history, summary={"rank_sum": float(ranks.sum())})
