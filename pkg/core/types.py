# core/types.py
"""
Edge, vertex-state and vertex-program contracts shared by the engine,
the algorithms and graph I/O
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Iterator, NamedTuple, Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike, DTypeLike

from .sparse import SPARSE_VECTOR_KINDS


class EdgeTriple(NamedTuple):
    """(source, destination, edge value), 0-based ids"""

    src: int
    dst: int
    value: float = 1.0


@dataclass
class EdgeList:
    """Column-wise collection of EdgeTriples"""

    src: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    dst: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    values: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.float64))

    def __post_init__(self):
        self.src = np.asarray(self.src, dtype=np.int64).reshape(-1)
        self.dst = np.asarray(self.dst, dtype=np.int64).reshape(-1)
        self.values = np.asarray(self.values, dtype=np.float64).reshape(-1)
        if not len(self.src) == len(self.dst) == len(self.values):
            raise ValueError(
                f"edge columns differ in length: src={len(self.src)}, "
                f"dst={len(self.dst)}, values={len(self.values)}"
            )

    def __len__(self) -> int:
        return len(self.src)

    def __iter__(self) -> Iterator[EdgeTriple]:
        for s, d, v in zip(self.src.tolist(), self.dst.tolist(), self.values.tolist()):
            yield EdgeTriple(s, d, v)

    @classmethod
    def from_triples(
        cls, triples: Iterable[Tuple[int, int, float] | Tuple[int, int]]
    ) -> "EdgeList":
        """Build from (src, dst[, value]) tuples; missing values default to 1"""
        src, dst, values = [], [], []
        for triple in triples:
            src.append(triple[0])
            dst.append(triple[1])
            values.append(triple[2] if len(triple) > 2 else 1.0)
        return cls(np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64), values)

    @classmethod
    def from_arrays(
        cls, src: ArrayLike, dst: ArrayLike, values: Optional[ArrayLike] = None
    ) -> "EdgeList":
        """Build from id columns; unit values when none are given"""
        src = np.asarray(src, dtype=np.int64)
        if values is None:
            values = np.ones(len(src), dtype=np.float64)
        return cls(src, dst, values)

    def to_triples(self) -> list[EdgeTriple]:
        """Materialize as a list of EdgeTriple"""
        return list(self)

    def vertex_span(self) -> int:
        """Smallest vertex count covering every endpoint"""
        if len(self) == 0:
            return 0
        return int(max(self.src.max(), self.dst.max())) + 1

    def select(self, mask: np.ndarray) -> "EdgeList":
        """Edges where mask is true, order preserved"""
        return EdgeList(self.src[mask], self.dst[mask], self.values[mask])


class ScatterDirection(Enum):
    """Edges a message travels along"""

    OUT = "out"
    IN = "in"
    BOTH = "both"


class VertexPropertyStore:
    """Per-vertex algorithm state plus the active flags"""

    def __init__(self, properties: np.ndarray, active: Optional[np.ndarray] = None):
        self.properties = properties
        if active is None:
            active = np.zeros(len(properties), dtype=bool)
        self.active = np.asarray(active, dtype=bool)
        if len(self.active) != len(self.properties):
            raise ValueError(
                f"active flags ({len(self.active)}) and properties ({len(self.properties)}) "
                "differ in length"
            )

    def __len__(self) -> int:
        return len(self.properties)

    @classmethod
    def full(
        cls,
        num_vertices: int,
        fill: Any,
        dtype: DTypeLike = np.float64,
        shape: Tuple[int, ...] = (),
    ) -> "VertexPropertyStore":
        """Every vertex starts with the same state, all inactive"""
        properties = np.empty((num_vertices, *shape), dtype=dtype)
        if properties.dtype == object:
            for v in range(num_vertices):
                properties[v] = fill
        else:
            properties[...] = fill
        return cls(properties)

    @property
    def active_count(self) -> int:
        """Number of active vertices"""
        return int(np.count_nonzero(self.active))

    def active_vertices(self) -> np.ndarray:
        """Active vertex ids, ascending"""
        return np.flatnonzero(self.active).astype(np.int64)

    def activate(self, vertices: ArrayLike) -> None:
        """Mark the given vertices active"""
        self.active[np.asarray(vertices, dtype=np.int64)] = True

    def activate_all(self) -> None:
        """Mark every vertex active"""
        self.active[:] = True

    def copy(self) -> "VertexPropertyStore":
        """Deep copy of state and flags"""
        return VertexPropertyStore(self.properties.copy(), self.active.copy())


class GraphProgram:
    """
    Vertex program executed one superstep at a time.

    Subclasses provide the four callbacks. `send_message` may return None to
    stay silent for a superstep. `reduce` must be commutative and associative
    with `reduce(reduce_identity, m) == m`.

    Programs that set `vectorized = True` also implement `send_batch`,
    `process_batch` and `apply_batch` over numpy arrays and name the numpy
    ufunc equivalent to `reduce` in `reduce_ufunc`.
    """

    name = "program"
    direction = ScatterDirection.OUT
    reduce_identity: Any = 0.0

    # sparse vector layout for x and y
    message_dtype: DTypeLike = np.float64
    message_shape: Tuple[int, ...] = ()
    reduced_dtype: DTypeLike = np.float64
    reduced_shape: Tuple[int, ...] = ()

    apply_all = False
    vectorized = False
    reduce_ufunc: Optional[np.ufunc] = None

    def send_message(self, vertex: int, prop: Any) -> Any:
        """Message broadcast by an active vertex, or None"""
        raise NotImplementedError

    def process_message(self, message: Any, edge_value: float, dst_prop: Any) -> Any:
        """Per-edge transformation of a received message"""
        raise NotImplementedError

    def reduce(self, accumulator: Any, processed: Any) -> Any:
        """Fold one processed message into the accumulator"""
        raise NotImplementedError

    def apply(self, reduced: Any, prop: Any) -> Any:
        """New vertex state from the reduced value"""
        raise NotImplementedError

    def send_batch(self, vertices: np.ndarray, props: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Senders subset and their messages"""
        raise NotImplementedError

    def process_batch(
        self, messages: np.ndarray, edge_values: np.ndarray, dst_props: np.ndarray
    ) -> np.ndarray:
        """Vectorized process_message, one row per edge"""
        raise NotImplementedError

    def apply_batch(self, reduced: np.ndarray, props: np.ndarray) -> np.ndarray:
        """Vectorized apply"""
        raise NotImplementedError

    # pylint: disable-next=unused-argument
    def converged(self, old: np.ndarray, new: np.ndarray) -> bool:
        """Extra stop test after a superstep; the default never stops early"""
        return False


@dataclass(frozen=True)
class EngineConfig:
    """Superstep budget and parallel layout"""

    max_iterations: int = 100
    thread_count: int = 1
    partitions_per_thread: int = 8
    deterministic_reduction: bool = True
    sparse_vector: str = "bitvector"

    def __post_init__(self):
        if self.max_iterations < 0:
            raise ValueError(f"max_iterations must be >= 0, got {self.max_iterations}")
        if self.thread_count < 1:
            raise ValueError(f"thread_count must be >= 1, got {self.thread_count}")
        if self.partitions_per_thread < 1:
            raise ValueError(
                f"partitions_per_thread must be >= 1, got {self.partitions_per_thread}"
            )
        if self.sparse_vector not in SPARSE_VECTOR_KINDS:
            raise ValueError(f"unknown sparse vector kind {self.sparse_vector!r}")

    @property
    def total_partitions(self) -> int:
        """Row slabs the matrix is split into"""
        return self.thread_count * self.partitions_per_thread
