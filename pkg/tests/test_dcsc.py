# tests/test_dcsc.py
"""Partitioned DCSC storage of G^T"""

import numpy as np
import pytest

from core.dcsc import build_graph, iterate_column, partition_bounds, transpose_triples
from core.degree import degree_vector
from core.errors import GraphBuildError
from core.types import EdgeList, ScatterDirection
from oracles import DenseMatrix

from .conftest import make_graph, random_edges

EXAMPLE = [(0, 1, 1.0), (2, 1, 1.0), (1, 2, 1.0)]


def test_empty_graph_single_partition():
    graph = make_graph([], 3)
    (part,) = graph.transpose_partitions
    assert part.col_ids.size == 0
    assert part.nnz == 0
    assert (part.row_lo, part.row_hi) == (0, 3)


def test_one_partition_layout():
    (part,) = make_graph(EXAMPLE, 3).transpose_partitions
    assert part.col_ids.tolist() == [0, 1, 2]
    assert part.col_starts.tolist() == [0, 1, 2, 3]
    assert part.row_ids.tolist() == [1, 2, 1]
    assert part.values.tolist() == [1.0, 1.0, 1.0]
    part.validate()


def test_two_partitions_split_rows():
    first, second = make_graph(EXAMPLE, 3, partitions=2).transpose_partitions
    assert (first.row_lo, first.row_hi) == (0, 2)
    assert (second.row_lo, second.row_hi) == (2, 3)
    assert sorted((r, c) for r, c, _ in first.entries()) == [(1, 0), (1, 2)]
    assert [(r, c) for r, c, _ in second.entries()] == [(2, 1)]


def test_iterate_column():
    (part,) = make_graph(EXAMPLE, 3).transpose_partitions
    assert iterate_column(part, 1) == [(2, 1.0)]
    assert iterate_column(part, 0) == [(1, 1.0)]
    empty = make_graph([(0, 1)], 3).transpose_partitions[0]
    assert iterate_column(empty, 2) == []


def test_iterate_column_matches_dense_scan(rng):
    for _ in range(10):
        n = int(rng.integers(1, 200))
        edges = random_edges(rng, n, 0.05, weights=9)
        graph = build_graph(edges, n, int(rng.integers(1, 9)))
        dense = DenseMatrix.transpose_of(edges.to_triples(), n)
        for col in range(n):
            expected = [(k, dense[k, col]) for k in range(n) if dense[k, col] is not None]
            got = []
            for part in graph.transpose_partitions:
                got.extend(iterate_column(part, col))
            assert got == expected


@pytest.mark.parametrize("partitions", [1, 2, 3, 8])
def test_round_trip_and_tiling(rng, partitions):
    edges = random_edges(rng, 60, 0.1, weights=5)
    graph = build_graph(edges, 60, partitions)
    parts = graph.transpose_partitions
    assert len(parts) == partitions
    assert parts[0].row_lo == 0 and parts[-1].row_hi == 60
    for left, right in zip(parts, parts[1:]):
        assert left.row_hi == right.row_lo
    assert sum(p.nnz for p in parts) == len(edges)
    for part in parts:
        part.validate()
    stored = sorted((c, r, v) for p in parts for r, c, v in p.entries())
    assert stored == sorted(edges.to_triples())


def test_forward_is_transpose_of_stored(rng):
    edges = random_edges(rng, 40, 0.1, weights=3)
    graph = build_graph(edges, 40, 4)
    assert not graph.has_forward
    transposed = sorted(e for p in graph.transpose_partitions for e in p.entries())
    forward = sorted((c, r, v) for p in graph.forward_partitions for r, c, v in p.entries())
    assert graph.has_forward
    assert transposed == forward


def test_out_degrees_from_transpose_only(rng):
    edges = random_edges(rng, 60, 0.08)
    graph = build_graph(edges, 60, 5)
    degrees = graph.out_degrees()
    assert not graph.has_forward
    assert degrees.tolist() == np.bincount(edges.src, minlength=60).tolist()
    spmv = degree_vector(build_graph(edges, 60, 5), ScatterDirection.OUT)
    assert degrees.tolist() == spmv.tolist()


def test_partition_bounds_balance_nonzeros():
    counts = np.array([100, 1, 1, 1, 1, 100, 1, 1])
    bounds = partition_bounds(counts, 2)
    assert bounds.tolist() == [0, 4, 8]


def test_partition_bounds_without_nonzeros():
    assert partition_bounds(np.zeros(6, dtype=np.int64), 3).tolist() == [0, 2, 4, 6]


def test_partition_bounds_more_partitions_than_rows():
    bounds = partition_bounds(np.array([3, 2]), 8)
    assert bounds[0] == 0 and bounds[-1] == 2
    assert np.all(np.diff(bounds) >= 0)


def test_duplicate_edge_rejected():
    with pytest.raises(GraphBuildError, match="duplicate"):
        make_graph([(0, 1), (0, 1)], 2)


def test_out_of_range_edge_rejected():
    with pytest.raises(GraphBuildError):
        make_graph([(0, 3)], 3)


def test_zero_partitions_rejected():
    with pytest.raises(GraphBuildError):
        build_graph(EdgeList(), 3, 0)


def test_transpose_triples():
    assert len(transpose_triples(EdgeList())) == 0
    swapped = transpose_triples(EdgeList.from_triples([(0, 1, 2.5)]))
    assert swapped.to_triples() == [(1, 0, 2.5)]


def test_double_transpose(rng):
    edges = random_edges(rng, 30, 0.2, weights=4)
    assert transpose_triples(transpose_triples(edges)).to_triples() == edges.to_triples()


def test_degrees(triangle_dag):
    assert degree_vector(triangle_dag, ScatterDirection.IN).tolist() == [0, 1, 2]
    assert degree_vector(triangle_dag, ScatterDirection.OUT).tolist() == [2, 1, 0]
    assert degree_vector(make_graph([], 4), ScatterDirection.IN).tolist() == [0, 0, 0, 0]


def test_in_degree_matches_direct_count(rng):
    for _ in range(50):
        n = int(rng.integers(1, 1000))
        edges = random_edges(rng, n, min(1.0, 5.0 / n))
        graph = build_graph(edges, n, int(rng.integers(1, 9)))
        expected = np.bincount(edges.dst, minlength=n)
        np.testing.assert_array_equal(degree_vector(graph, ScatterDirection.IN), expected)

