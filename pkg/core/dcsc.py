# core/dcsc.py
"""
Row-partitioned doubly compressed sparse column (DCSC) storage
"""

from dataclasses import dataclass
from logging import getLogger
from threading import Lock
from typing import Iterator, List, Optional, Tuple

import numpy as np

from .errors import GraphBuildError
from .types import EdgeList, ScatterDirection, VertexPropertyStore

logger = getLogger(__name__)


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


@dataclass(frozen=True)
class DcscPartition:
    """
    One row slab [row_lo, row_hi) of a sparse matrix.

    Only columns holding at least one nonzero in the slab are listed in
    `col_ids`; `col_starts[i]:col_starts[i + 1]` is the slice of `row_ids` and
    `values` belonging to `col_ids[i]`, rows ascending.
    """

    row_lo: int
    row_hi: int
    col_ids: np.ndarray
    col_starts: np.ndarray
    row_ids: np.ndarray
    values: np.ndarray

    @property
    def nnz(self) -> int:
        """Stored nonzeros"""
        return len(self.row_ids)

    def column(self, col: int) -> Tuple[np.ndarray, np.ndarray]:
        """Row ids and values of one column, empty when the column is compressed out"""
        pos = int(np.searchsorted(self.col_ids, col))
        if pos == len(self.col_ids) or self.col_ids[pos] != col:
            return self.row_ids[:0], self.values[:0]
        start, end = self.col_starts[pos], self.col_starts[pos + 1]
        return self.row_ids[start:end], self.values[start:end]

    def column_of_entries(self) -> np.ndarray:
        """Column id of every stored nonzero, aligned with row_ids"""
        return np.repeat(self.col_ids, np.diff(self.col_starts))

    def entries(self) -> Iterator[Tuple[int, int, float]]:
        """(row, col, value) for every nonzero, column-major"""
        cols = self.column_of_entries().tolist()
        yield from zip(self.row_ids.tolist(), cols, self.values.tolist())

    def validate(self) -> None:
        """Raise ValueError when a DCSC invariant does not hold"""
        starts = self.col_starts
        if len(starts) != len(self.col_ids) + 1 or starts[0] != 0:
            raise ValueError("col_starts must have len(col_ids) + 1 entries starting at 0")
        if starts[-1] != len(self.row_ids) or len(self.row_ids) != len(self.values):
            raise ValueError("col_starts must end at the nonzero count")
        if np.any(np.diff(starts) <= 0):
            raise ValueError("listed columns must be non-empty")
        if np.any(np.diff(self.col_ids) <= 0):
            raise ValueError("col_ids must be strictly ascending")
        if len(self.row_ids) and (
            self.row_ids.min() < self.row_lo or self.row_ids.max() >= self.row_hi
        ):
            raise ValueError(f"row ids outside [{self.row_lo}, {self.row_hi})")
        same_column = np.diff(self.column_of_entries()) == 0
        if np.any(np.diff(self.row_ids)[same_column] <= 0):
            raise ValueError("rows within a column must be strictly ascending")


def partition_bounds(row_counts: np.ndarray, num_partitions: int) -> np.ndarray:
    """
    Contiguous row blocks holding roughly equal nonzero counts.

    Greedy prefix-sum split; falls back to equal row counts when there are no
    nonzeros. Returns num_partitions + 1 monotone boundaries from 0 to n.
    """
    num_rows = len(row_counts)
    total = int(row_counts.sum())
    if total == 0 or num_partitions == 1:
        return np.array([num_rows * i // num_partitions for i in range(num_partitions + 1)])

    cumulative = np.cumsum(row_counts)
    targets = total * np.arange(1, num_partitions) / num_partitions
    cuts = np.searchsorted(cumulative, targets, side="left") + 1
    bounds = np.concatenate(([0], np.minimum(cuts, num_rows), [num_rows]))
    return np.maximum.accumulate(bounds)


def build_partitions(
    rows: np.ndarray,
    cols: np.ndarray,
    values: np.ndarray,
    num_rows: int,
    num_partitions: int,
) -> List[DcscPartition]:
    """Split a coordinate matrix into nonzero-balanced DCSC row slabs"""
    bounds = partition_bounds(np.bincount(rows, minlength=num_rows), num_partitions)
    owner = np.searchsorted(bounds, rows, side="right") - 1

    order = np.lexsort((rows, cols, owner))
    rows, cols, values, owner = rows[order], cols[order], values[order], owner[order]
    splits = np.searchsorted(owner, np.arange(num_partitions + 1), side="left")

    partitions = []
    for p in range(num_partitions):
        start, end = splits[p], splits[p + 1]
        part_cols = cols[start:end]
        col_ids, counts = np.unique(part_cols, return_counts=True)
        col_starts = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)
        partitions.append(
            DcscPartition(
                row_lo=int(bounds[p]),
                row_hi=int(bounds[p + 1]),
                col_ids=_frozen(col_ids.astype(np.int64)),
                col_starts=_frozen(col_starts),
                row_ids=_frozen(rows[start:end].copy()),
                values=_frozen(values[start:end].copy()),
            )
        )
    return partitions


class Graph:
    """
    Adjacency matrix G stored transposed (G^T) in row partitions, with the
    forward matrix built on first use, and the per-vertex state.
    """

    def __init__(self, edges: EdgeList, num_vertices: int, num_partitions: int):
        self.num_vertices = num_vertices
        self.num_edges = len(edges)
        self.num_partitions = num_partitions
        self._edges = edges
        # G^T: row = destination, column = source
        self.transpose_partitions = build_partitions(
            edges.dst, edges.src, edges.values, num_vertices, num_partitions
        )
        self._forward_partitions: Optional[List[DcscPartition]] = None
        self._forward_lock = Lock()
        self.run_lock = Lock()
        self.properties = VertexPropertyStore.full(num_vertices, 0.0)

    def __repr__(self) -> str:
        return (
            f"Graph(num_vertices={self.num_vertices}, num_edges={self.num_edges}, "
            f"num_partitions={self.num_partitions})"
        )

    @property
    def forward_partitions(self) -> List[DcscPartition]:
        """G itself (row = source), built once on demand"""
        if self._forward_partitions is None:
            with self._forward_lock:
                if self._forward_partitions is None:
                    logger.debug("Building forward matrix for %r", self)
                    self._forward_partitions = build_partitions(
                        self._edges.src,
                        self._edges.dst,
                        self._edges.values,
                        self.num_vertices,
                        self.num_partitions,
                    )
        return self._forward_partitions

    @property
    def has_forward(self) -> bool:
        """Whether the forward matrix has been built"""
        return self._forward_partitions is not None

    def matrices_for(self, direction: ScatterDirection) -> List[List[DcscPartition]]:
        """Partition sets an SPMV walks for a scatter direction"""
        if direction is ScatterDirection.OUT:
            return [self.transpose_partitions]
        if direction is ScatterDirection.IN:
            return [self.forward_partitions]
        return [self.transpose_partitions, self.forward_partitions]

    def out_degrees(self) -> np.ndarray:
        """Out-degree per vertex from the column extents of G^T"""
        degrees = np.zeros(self.num_vertices, dtype=np.int64)
        for part in self.transpose_partitions:
            # col_ids are unique within a slab
            degrees[part.col_ids] += np.diff(part.col_starts)
        return degrees

    def edges(self) -> EdgeList:
        """Edges the graph was built from"""
        return self._edges

    def edge_values(self) -> np.ndarray:
        """All stored edge values"""
        return self._edges.values


def _check_edges(edges: EdgeList, num_vertices: int, num_partitions: int) -> None:
    if num_partitions < 1:
        raise GraphBuildError(f"num_partitions must be >= 1, got {num_partitions}")
    if num_vertices < 0:
        raise GraphBuildError(f"num_vertices must be >= 0, got {num_vertices}")
    if len(edges) == 0:
        return
    if num_vertices == 0:
        raise GraphBuildError(f"{len(edges)} edges given for a graph with zero vertices")

    bad = (edges.src < 0) | (edges.src >= num_vertices) | (edges.dst < 0)
    bad |= edges.dst >= num_vertices
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise GraphBuildError(
            f"edge ({edges.src[i]} -> {edges.dst[i]}) has an endpoint outside "
            f"[0, {num_vertices})"
        )

    keys = np.sort(edges.src * num_vertices + edges.dst)
    repeated = np.flatnonzero(np.diff(keys) == 0)
    if repeated.size:
        key = int(keys[repeated[0]])
        raise GraphBuildError(
            f"duplicate edge ({key // num_vertices} -> {key % num_vertices}); "
            "deduplicate before building"
        )


def build_graph(edges: EdgeList, num_vertices: int, num_partitions: int) -> Graph:
    """Validate edges and build the partitioned G^T"""
    _check_edges(edges, num_vertices, num_partitions)
    graph = Graph(edges, num_vertices, num_partitions)
    logger.info(
        "Built graph: %d vertices, %d edges, %d partitions",
        graph.num_vertices,
        graph.num_edges,
        num_partitions,
    )
    return graph


def iterate_column(partition: DcscPartition, col: int) -> List[Tuple[int, float]]:
    """(row, value) pairs of one column inside a partition, rows ascending"""
    rows, values = partition.column(col)
    return list(zip(rows.tolist(), values.tolist()))


def transpose_triples(edges: EdgeList) -> EdgeList:
    """Swap source and destination of every edge"""
    return EdgeList(edges.dst.copy(), edges.src.copy(), edges.values.copy())
