# algorithms/base.py
"""
Shared result type and helpers for algorithm drivers
"""

from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional

from core.dcsc import Graph
from core.engine import IterationStats
from core.errors import VertexRangeError
from core.types import EngineConfig


@dataclass
class AlgorithmResult:
    """What the CLI writes out after a run"""

    values: Any
    history: List[IterationStats] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)

    @property
    def iterations(self) -> int:
        """Supersteps executed"""
        return len(self.history)


def check_vertex(graph: Graph, vertex: int, what: str = "vertex") -> int:
    """Validate a vertex id argument"""
    if not 0 <= vertex < graph.num_vertices:
        raise VertexRangeError(what, vertex, graph.num_vertices)
    return int(vertex)


def engine_config_for(
    engine_config: Optional[EngineConfig], max_iterations: Optional[int]
) -> EngineConfig:
    """Caller's engine layout with an algorithm-specific iteration budget"""
    config = engine_config or EngineConfig()
    if max_iterations is None:
        return config
    return replace(config, max_iterations=max_iterations)


def option(options: Any, name: str, default: Any = None) -> Any:
    """Read an attribute from an argparse namespace or a dict"""
    if isinstance(options, dict):
        value = options.get(name, default)
    else:
        value = getattr(options, name, default)
    return default if value is None else value
