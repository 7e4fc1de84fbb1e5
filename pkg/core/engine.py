# core/engine.py
"""
Superstep engine: Send_Message -> generalized SPMV -> Apply -> activity update
"""

from concurrent.futures import Executor, ThreadPoolExecutor
from dataclasses import dataclass
from logging import getLogger
from time import perf_counter
from typing import Any, Callable, List, Optional, Sequence, Tuple

import numpy as np

from .dcsc import DcscPartition, Graph
from .errors import GraphMatError, ProgramError
from .sparse import SparseVector, TupleSparseVector, make_sparse_vector
from .types import EngineConfig, GraphProgram, ScatterDirection, VertexPropertyStore

logger = getLogger(__name__)

AnyVector = SparseVector | TupleSparseVector


@dataclass
class IterationStats:  # pylint: disable=too-many-instance-attributes
    """Counters and timings for one superstep"""

    iteration: int
    active_before: int = 0
    messages_generated: int = 0
    vertices_updated: int = 0
    vertices_activated: int = 0
    spmv_seconds: float = 0.0
    total_seconds: float = 0.0


def _map(executor: Optional[Executor], fn: Callable, items: Sequence) -> List[Any]:
    """executor.map when there is something to parallelize, plain loop otherwise"""
    if executor is None or len(items) <= 1:
        return [fn(item) for item in items]
    return list(executor.map(fn, items))


def _chunks(indices: np.ndarray, pieces: int) -> List[np.ndarray]:
    return [chunk for chunk in np.array_split(indices, max(1, pieces)) if chunk.size]


def _snapshot(value: Any) -> Any:
    if isinstance(value, (np.ndarray, np.generic)):
        return value.copy()
    return value


def _differs(old: Any, new: Any) -> bool:
    """Exact comparison; numeric state compares bit patterns"""
    if isinstance(old, (np.ndarray, np.generic)) or isinstance(new, (np.ndarray, np.generic)):
        return np.asarray(old).tobytes() != np.asarray(new).tobytes()
    return bool(old != new)


def changed_mask(old: np.ndarray, new: np.ndarray) -> np.ndarray:
    """Per-vertex exact inequality of two property arrays"""
    if len(old) == 0:
        return np.zeros(0, dtype=bool)
    if old.dtype == object:
        return np.fromiter((_differs(a, b) for a, b in zip(old, new)), dtype=bool, count=len(old))
    old_bytes = np.ascontiguousarray(old).view(np.uint8).reshape(len(old), -1)
    new_bytes = np.ascontiguousarray(new, dtype=old.dtype).view(np.uint8).reshape(len(new), -1)
    return np.any(old_bytes != new_bytes, axis=1)


def generate_messages(
    graph: Graph,
    program: GraphProgram,
    *,
    kind: str = "bitvector",
    executor: Optional[Executor] = None,
    pieces: int = 1,
) -> AnyVector:
    """x_v = Send_Message(v) for every active vertex v"""
    store = graph.properties
    x = make_sparse_vector(
        graph.num_vertices, program.message_dtype, program.message_shape, kind=kind
    )
    active = store.active_vertices()
    if active.size == 0:
        return x

    if program.vectorized:
        try:
            senders, messages = program.send_batch(active, store.properties[active])
        except Exception as e:  # pylint: disable=broad-exception-caught
            raise ProgramError("send_batch", detail=str(e)) from e
        x.set_many(senders, messages)
        return x

    def _send(chunk: np.ndarray) -> Tuple[List[int], List[Any]]:
        senders, messages = [], []
        for v in chunk.tolist():
            try:
                message = program.send_message(v, _snapshot(store.properties[v]))
            except Exception as e:  # pylint: disable=broad-exception-caught
                raise ProgramError("send_message", column=v, detail=str(e)) from e
            if message is not None:
                senders.append(v)
                messages.append(message)
        return senders, messages

    # workers only build lists; the bitvector has a single writer
    for senders, messages in _map(executor, _send, _chunks(active, pieces)):
        x.set_many(senders, messages)
    return x


def _spmv_partition_callbacks(
    part: DcscPartition, x: AnyVector, program: GraphProgram, props: np.ndarray
) -> Tuple[np.ndarray, List[Any]]:
    accumulators: dict[int, Any] = {}
    for pos in np.flatnonzero(x.contains_many(part.col_ids)).tolist():
        j = int(part.col_ids[pos])
        message = x.get(j)
        start, end = part.col_starts[pos], part.col_starts[pos + 1]
        rows = part.row_ids[start:end].tolist()
        for k, edge_value in zip(rows, part.values[start:end].tolist()):
            try:
                result = program.process_message(message, edge_value, props[k])
                accumulators[k] = program.reduce(
                    accumulators.get(k, program.reduce_identity), result
                )
            except Exception as e:  # pylint: disable=broad-exception-caught
                raise ProgramError("process_message/reduce", column=j, row=k, detail=str(e)) from e

    rows = np.array(sorted(accumulators), dtype=np.int64)
    return rows, [accumulators[k] for k in rows.tolist()]


def _failing_entry(
    hook: Callable, error: Exception, count: int, *arrays: np.ndarray
) -> Optional[Tuple[int, str]]:
    """
    Bisect a failed batch call down to one entry the hook rejects.

    Returns its index and error message, or None when both halves pass
    on their own (the failure needs the whole batch).
    """
    lo, hi, message = 0, count, str(error)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        for a, b in ((lo, mid), (mid, hi)):
            try:
                hook(*(arr[a:b] for arr in arrays))
            except Exception as e:  # pylint: disable=broad-exception-caught
                lo, hi, message = a, b, str(e)
                break
        else:
            return None
    return lo, message


def _spmv_partition_vectorized(
    part: DcscPartition,
    x: AnyVector,
    program: GraphProgram,
    props: np.ndarray,
    deterministic: bool,
) -> Tuple[np.ndarray, np.ndarray]:
    active = np.flatnonzero(x.contains_many(part.col_ids))
    if active.size == 0:
        return np.zeros(0, dtype=np.int64), np.zeros((0, *program.reduced_shape))

    starts = part.col_starts[active]
    lengths = part.col_starts[active + 1] - starts
    total = int(lengths.sum())
    # entry offsets of the selected columns, column order preserved
    offsets = np.arange(total) + np.repeat(starts - (np.cumsum(lengths) - lengths), lengths)
    sources = np.repeat(part.col_ids[active], lengths)
    rows = part.row_ids[offsets]

    batch = (x.values_at(sources), part.values[offsets], props[rows])
    try:
        contributions = program.process_batch(*batch)
    except Exception as e:  # pylint: disable=broad-exception-caught
        found = _failing_entry(program.process_batch, e, total, *batch)
        if found is None:
            raise ProgramError(
                "process_batch", detail=f"rows [{part.row_lo}, {part.row_hi}): {e}"
            ) from e
        i, detail = found
        raise ProgramError(
            "process_batch", column=int(sources[i]), row=int(rows[i]), detail=detail
        ) from e
    contributions = np.asarray(contributions, dtype=program.reduced_dtype)
    ufunc = program.reduce_ufunc

    if not deterministic:
        # grouped pairwise reduction; float sums may differ from the sequential fold
        order = np.argsort(rows)
        rows, contributions = rows[order], contributions[order]
        heads = np.flatnonzero(np.concatenate(([True], rows[1:] != rows[:-1])))
        return rows[heads], ufunc.reduceat(contributions, heads, axis=0)

    # ufunc.at folds one entry at a time in array order, which is ascending column per row
    local = np.full(
        (part.row_hi - part.row_lo, *program.reduced_shape),
        program.reduce_identity,
        dtype=program.reduced_dtype,
    )
    ufunc.at(local, rows - part.row_lo, contributions)
    touched = np.unique(rows)
    return touched, local[touched - part.row_lo]


def spmv_partition(
    part: DcscPartition,
    x: AnyVector,
    program: GraphProgram,
    props: np.ndarray,
    deterministic: bool = True,
) -> Tuple[np.ndarray, Any]:
    """
    Generalized SPMV restricted to one row slab.

    Returns the touched rows (ascending, all inside [row_lo, row_hi)) and
    their reduced values. Each row folds its contributions in ascending
    column order.
    """
    if program.vectorized:
        return _spmv_partition_vectorized(part, x, program, props, deterministic)
    return _spmv_partition_callbacks(part, x, program, props)


def _merge_into(y: AnyVector, rows: np.ndarray, values: Any, program: GraphProgram) -> None:
    """Reduce-merge a partial result into y"""
    if rows.size == 0:
        return
    present = y.contains_many(rows)
    if not present.any():
        y.set_many(rows, values)
        return
    if program.vectorized:
        values = np.asarray(values, dtype=program.reduced_dtype)
        merged = program.reduce_ufunc(y.values_at(rows[present]), values[present])
        y.set_many(rows[present], merged)
        y.set_many(rows[~present], values[~present])
        return
    for k, value, seen in zip(rows.tolist(), values, present.tolist()):
        y.set(k, program.reduce(y.get(k), value) if seen else value)


def generalized_spmv(
    graph: Graph,
    x: AnyVector,
    program: GraphProgram,
    *,
    kind: Optional[str] = None,
    executor: Optional[Executor] = None,
    deterministic: bool = True,
) -> AnyVector:
    """y = G^T x (or G x) with Process_Message as multiply and Reduce as add"""
    if x.length != graph.num_vertices:
        raise ValueError(f"vector length {x.length} != vertex count {graph.num_vertices}")
    y = make_sparse_vector(
        graph.num_vertices, program.reduced_dtype, program.reduced_shape, kind=kind or x.kind
    )
    if x.nnz == 0:
        return y

    props = graph.properties.properties
    for matrix in graph.matrices_for(program.direction):
        results = _map(
            executor,
            lambda part: spmv_partition(part, x, program, props, deterministic),
            [part for part in matrix if part.nnz],
        )
        for rows, values in results:
            _merge_into(y, rows, values, program)
    return y


def apply_and_activate(
    graph: Graph,
    y: AnyVector,
    program: GraphProgram,
    *,
    executor: Optional[Executor] = None,
    pieces: int = 1,
) -> IterationStats:
    """Reset active flags, apply reduced values, re-activate changed vertices"""
    store = graph.properties
    store.active[:] = False
    received = y.indices()
    stats = IterationStats(iteration=0)

    if program.apply_all:
        targets = np.arange(graph.num_vertices, dtype=np.int64)
    else:
        targets = received
    if targets.size == 0:
        return stats

    if program.vectorized:
        reduced = y.values_at(received)
        if program.apply_all:
            full = np.full(
                (graph.num_vertices, *program.reduced_shape),
                program.reduce_identity,
                dtype=program.reduced_dtype,
            )
            full[received] = reduced
            reduced = full
        old = store.properties[targets]
        try:
            new = program.apply_batch(reduced, old)
        except Exception as e:  # pylint: disable=broad-exception-caught
            found = _failing_entry(program.apply_batch, e, int(targets.size), reduced, old)
            if found is None:
                raise ProgramError("apply_batch", detail=str(e)) from e
            i, detail = found
            raise ProgramError("apply_batch", row=int(targets[i]), detail=detail) from e
        changed = changed_mask(old, new)
        store.properties[targets] = new
        store.active[targets[changed]] = True
    else:
        received_set = set(received.tolist())

        def _apply(chunk: np.ndarray) -> int:
            activated = 0
            for v in chunk.tolist():
                old = _snapshot(store.properties[v])
                reduced = y.get(v) if v in received_set else program.reduce_identity
                try:
                    new = program.apply(reduced, old)
                except Exception as e:  # pylint: disable=broad-exception-caught
                    raise ProgramError("apply", row=v, detail=str(e)) from e
                store.properties[v] = new
                if _differs(old, store.properties[v]):
                    store.active[v] = True
                    activated += 1
            return activated

        _map(executor, _apply, _chunks(targets, pieces))

    stats.vertices_updated = int(targets.size)
    stats.vertices_activated = store.active_count
    return stats


def _overrides_converged(program: GraphProgram) -> bool:
    return type(program).converged is not GraphProgram.converged


class GraphEngine:
    """Runs vertex programs over one Graph with a fixed-size worker pool"""

    def __init__(self, graph: Graph, config: EngineConfig):
        self.graph = graph
        self.config = config

    def _step(
        self, program: GraphProgram, iteration: int, executor: Optional[Executor]
    ) -> IterationStats:
        store = self.graph.properties
        pieces = self.config.total_partitions
        started = perf_counter()
        active_before = store.active_count

        x = generate_messages(
            self.graph, program, kind=self.config.sparse_vector, executor=executor, pieces=pieces
        )
        spmv_started = perf_counter()
        y = generalized_spmv(
            self.graph,
            x,
            program,
            executor=executor,
            deterministic=self.config.deterministic_reduction,
        )
        spmv_seconds = perf_counter() - spmv_started

        stats = apply_and_activate(self.graph, y, program, executor=executor, pieces=pieces)
        stats.iteration = iteration
        stats.active_before = active_before
        stats.messages_generated = x.nnz
        stats.spmv_seconds = spmv_seconds
        stats.total_seconds = perf_counter() - started
        return stats

    def run(self, program: GraphProgram) -> Tuple[VertexPropertyStore, List[IterationStats]]:
        """Supersteps until max_iterations or no vertex changed"""
        if not self.graph.run_lock.acquire(blocking=False):
            raise GraphMatError(f"{self.graph!r} is already running a program")
        try:
            return self._run(program)
        finally:
            self.graph.run_lock.release()

    def _run(self, program: GraphProgram) -> Tuple[VertexPropertyStore, List[IterationStats]]:
        store = self.graph.properties
        history: List[IterationStats] = []
        if self.config.max_iterations == 0:
            return store, history

        if program.direction is not ScatterDirection.OUT:
            # build the forward matrix before timing starts
            _ = self.graph.forward_partitions

        watch_convergence = _overrides_converged(program)
        executor = None
        if self.config.thread_count > 1:
            executor = ThreadPoolExecutor(
                max_workers=self.config.thread_count, thread_name_prefix="spmv"
            )
        try:
            for iteration in range(1, self.config.max_iterations + 1):
                previous = store.properties.copy() if watch_convergence else None
                stats = self._step(program, iteration, executor)
                history.append(stats)
                logger.debug(
                    "%s superstep %d: active=%d messages=%d updated=%d changed=%d "
                    "spmv=%.6fs total=%.6fs",
                    program.name,
                    iteration,
                    stats.active_before,
                    stats.messages_generated,
                    stats.vertices_updated,
                    stats.vertices_activated,
                    stats.spmv_seconds,
                    stats.total_seconds,
                )
                if store.active_count == 0:
                    break
                if previous is not None and program.converged(previous, store.properties):
                    logger.debug("%s converged after %d supersteps", program.name, iteration)
                    break
        finally:
            if executor is not None:
                executor.shutdown(wait=True)

        logger.info(
            "%s finished: %d supersteps, %.6fs",
            program.name,
            len(history),
            sum(s.total_seconds for s in history),
        )
        return store, history


def run_graph_program(
    graph: Graph, program: GraphProgram, config: EngineConfig
) -> Tuple[VertexPropertyStore, List[IterationStats]]:
    """Run supersteps of program over the graph's current vertex state"""
    return GraphEngine(graph, config).run(program)
