# algorithms/cf.py
"""
Collaborative filtering by gradient descent on a users x items rating graph
"""

from dataclasses import dataclass, field, replace
from logging import getLogger
from typing import Any, List, Optional

import numpy as np

from core.dcsc import Graph
from core.engine import IterationStats, run_graph_program
from core.errors import GraphMatError, InputDataError
from core.types import EngineConfig, GraphProgram, ScatterDirection, VertexPropertyStore

from .base import AlgorithmResult, engine_config_for, option

logger = getLogger(__name__)

ALGORITHM_METADATA = {
    "name": "cf",
    "is_algorithm": True,
    "enabled": True,
    "description": "Latent factor model trained with full gradient descent",
    "version": "1.0.0",
    "priority": 10,
    "preprocess": "bipartite",
    "weighted": True,
    "requires": [],
}

SCHEDULES = ("simultaneous", "alternating")


@dataclass(frozen=True)
class CfConfig:  # pylint: disable=too-many-instance-attributes
    """Latent dimension, step size, regularization and schedule"""

    k: int = 20
    gamma: float = 1e-4
    lam: float = 0.05
    iterations: int = 10
    seed: int = 0
    schedule: str = "simultaneous"
    auto_gamma: bool = False
    max_halvings: int = 20

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.gamma <= 0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")
        if self.lam < 0:
            raise ValueError(f"lambda must be >= 0, got {self.lam}")
        if self.iterations < 0:
            raise ValueError(f"iterations must be >= 0, got {self.iterations}")
        if self.schedule not in SCHEDULES:
            raise ValueError(f"schedule must be one of {SCHEDULES}, got {self.schedule!r}")


@dataclass
class CfResult:
    """Trained factors; objective[0] is the value before the first update"""

    latent: np.ndarray
    is_user: np.ndarray
    objective: List[float] = field(default_factory=list)
    gamma: float = 0.0
    history: List[IterationStats] = field(default_factory=list)

    @property
    def users(self) -> np.ndarray:
        """Latent vectors of user vertices"""
        return self.latent[self.is_user]

    @property
    def items(self) -> np.ndarray:
        """Latent vectors of item vertices"""
        return self.latent[~self.is_user]


class CfProgram(GraphProgram):
    """
    Messages carry the sender's latent vector. Process_Message reads the
    receiver's vector to form the residual e = G_uv - p_u·p_v and returns
    e * p_sender. Apply runs on every vertex: p + gamma * (sum - lambda * p).
    """

    name = "cf"
    apply_all = True
    vectorized = True
    reduce_ufunc = np.add

    def __init__(
        self,
        k: int,
        gamma: float,
        lam: float,
        direction: ScatterDirection = ScatterDirection.BOTH,
        update_mask: Optional[np.ndarray] = None,
    ):
        self.k = k
        self.gamma = gamma
        self.lam = lam
        self.direction = direction
        self.update_mask = update_mask
        self.message_shape = (k,)
        self.reduced_shape = (k,)
        self.reduce_identity = np.zeros(k)

    def send_message(self, vertex, prop):
        return prop

    def process_message(self, message, edge_value, dst_prop):
        return (edge_value - float(np.dot(message, dst_prop))) * message

    def reduce(self, accumulator, processed):
        return accumulator + processed

    def apply(self, reduced, prop):
        return prop + self.gamma * (reduced - self.lam * prop)

    def send_batch(self, vertices, props):
        return vertices, props

    def process_batch(self, messages, edge_values, dst_props):
        residuals = edge_values - np.einsum("ij,ij->i", messages, dst_props)
        return residuals[:, None] * messages

    def apply_batch(self, reduced, props):
        updated = props + self.gamma * (reduced - self.lam * props)
        if self.update_mask is not None:
            updated[~self.update_mask] = props[~self.update_mask]
        return updated


def split_sides(graph: Graph, num_users: Optional[int] = None) -> np.ndarray:
    """
    Boolean user mask. With num_users, users are ids below it; otherwise
    users are the rating sources. Raises on an edge inside one side.
    """
    edges = graph.edges()
    if num_users is not None:
        is_user = np.arange(graph.num_vertices) < num_users
    else:
        is_user = np.zeros(graph.num_vertices, dtype=bool)
        is_user[edges.src] = True
    bad = np.flatnonzero(~is_user[edges.src] | is_user[edges.dst])
    if bad.size:
        i = int(bad[0])
        raise InputDataError(
            f"rating edge ({edges.src[i] + 1} -> {edges.dst[i] + 1}) "
            "does not go from a user to an item"
        )
    return is_user


def objective(graph: Graph, latent: np.ndarray, lam: float) -> float:
    """Squared rating error plus lambda times every vertex's squared norm"""
    edges = graph.edges()
    residuals = edges.values - np.einsum("ij,ij->i", latent[edges.src], latent[edges.dst])
    return float(np.dot(residuals, residuals) + lam * np.sum(latent * latent))


def init_latent(num_vertices: int, k: int, seed: int) -> np.ndarray:
    """Uniform in [0, 1/sqrt(k))"""
    rng = np.random.default_rng(seed)
    return rng.random((num_vertices, k)) / np.sqrt(k)


def _descend(
    graph: Graph,
    cfg: CfConfig,
    latent: np.ndarray,
    is_user: np.ndarray,
    gamma: float,
    engine_config: EngineConfig,
) -> CfResult:
    graph.properties = VertexPropertyStore(latent.copy())
    config = replace(engine_config, max_iterations=1)
    if cfg.schedule == "simultaneous":
        phases = [CfProgram(cfg.k, gamma, cfg.lam)]
    else:
        phases = [
            CfProgram(cfg.k, gamma, cfg.lam, ScatterDirection.OUT, update_mask=~is_user),
            CfProgram(cfg.k, gamma, cfg.lam, ScatterDirection.IN, update_mask=is_user),
        ]

    result = CfResult(latent=graph.properties.properties, is_user=is_user, gamma=gamma)
    result.objective.append(objective(graph, graph.properties.properties, cfg.lam))
    for _ in range(cfg.iterations):
        for program in phases:
            graph.properties.activate_all()
            _, history = run_graph_program(graph, program, config)
            result.history.extend(history)
        result.objective.append(objective(graph, graph.properties.properties, cfg.lam))
    result.latent = graph.properties.properties.copy()
    return result


def _non_increasing(trace: List[float]) -> bool:
    return all(later <= earlier for earlier, later in zip(trace, trace[1:]))


def find_stable_gamma(
    graph: Graph,
    cfg: CfConfig,
    trial_iterations: int = 5,
    num_users: Optional[int] = None,
    engine_config: Optional[EngineConfig] = None,
    initial: Optional[np.ndarray] = None,
) -> float:
    """Halve gamma until the objective does not rise over a short trial run"""
    is_user = split_sides(graph, num_users)
    latent = initial if initial is not None else init_latent(graph.num_vertices, cfg.k, cfg.seed)
    trial = replace(cfg, iterations=trial_iterations)
    gamma = cfg.gamma
    for halving in range(cfg.max_halvings + 1):
        trace = _descend(
            graph, trial, latent, is_user, gamma, engine_config or EngineConfig()
        ).objective
        if _non_increasing(trace):
            logger.debug("gamma %.3g stable after %d halvings", gamma, halving)
            return gamma
        gamma /= 2.0
    raise GraphMatError(
        f"objective still increases after {cfg.max_halvings} halvings of gamma={cfg.gamma}"
    )


def collaborative_filtering_gd(
    bipartite: Graph,
    cfg: Optional[CfConfig] = None,
    num_users: Optional[int] = None,
    engine_config: Optional[EngineConfig] = None,
    initial: Optional[np.ndarray] = None,
) -> CfResult:
    """Train user and item latent vectors; objective recorded per iteration"""
    cfg = cfg or CfConfig()
    is_user = split_sides(bipartite, num_users)
    if initial is not None:
        if initial.shape != (bipartite.num_vertices, cfg.k):
            raise ValueError(
                f"initial latent shape {initial.shape} != ({bipartite.num_vertices}, {cfg.k})"
            )
        latent = np.asarray(initial, dtype=np.float64)
    else:
        latent = init_latent(bipartite.num_vertices, cfg.k, cfg.seed)

    engine_config = engine_config_for(engine_config, None)
    gamma = cfg.gamma
    if cfg.auto_gamma:
        gamma = find_stable_gamma(
            bipartite, cfg, num_users=num_users, engine_config=engine_config, initial=latent
        )
    result = _descend(bipartite, cfg, latent, is_user, gamma, engine_config)
    logger.info(
        "CF: %d iterations, objective %.6g -> %.6g (gamma %.3g)",
        cfg.iterations,
        result.objective[0],
        result.objective[-1],
        gamma,
    )
    return result


def run(graph: Graph, options: Any, engine_config: EngineConfig) -> AlgorithmResult:
    """Registry entry point"""
    cfg = CfConfig(
        k=option(options, "k", 20),
        gamma=option(options, "gamma", 1e-4),
        lam=option(options, "lam", 0.05),
        iterations=option(options, "max_iters", 10),
        seed=option(options, "seed", 0),
        schedule=option(options, "schedule", "simultaneous"),
        auto_gamma=option(options, "auto_gamma", False),
    )
    result = collaborative_filtering_gd(graph, cfg, option(options, "users"), engine_config)
    return AlgorithmResult(
        values=result.latent,
        history=result.history,
        summary={
            "objective_trace": result.objective,
            "gamma": result.gamma,
            "users": int(np.count_nonzero(result.is_user)),
        },
    )
