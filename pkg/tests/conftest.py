# tests/conftest.py
"""Shared fixtures and small graph builders"""

import numpy as np
import pytest

from core.dcsc import build_graph
from core.types import EdgeList, EngineConfig

A, B, C = 0, 1, 2


def make_graph(triples, num_vertices, partitions=1):
    """Graph from (src, dst[, value]) tuples"""
    return build_graph(EdgeList.from_triples(triples), num_vertices, partitions)


def random_edges(rng, num_vertices, density, weights=None, allow_loops=False):
    """Distinct random edges; integer weights in [1, weights] when given"""
    mask = rng.random((num_vertices, num_vertices)) < density
    if not allow_loops:
        np.fill_diagonal(mask, False)
    src, dst = np.nonzero(mask)
    if weights:
        values = rng.integers(1, weights + 1, size=len(src)).astype(np.float64)
    else:
        values = np.ones(len(src))
    return EdgeList(src, dst, values)


@pytest.fixture
def rng():
    """Seeded generator per test"""
    return np.random.default_rng(12345)


@pytest.fixture
def triangle_dag():
    """A->B, A->C, B->C"""
    return make_graph([(A, B), (A, C), (B, C)], 3)


@pytest.fixture
def chain_graph():
    """A->B (2), B->C (3)"""
    return make_graph([(A, B, 2.0), (B, C, 3.0)], 3)


@pytest.fixture
def serial_config():
    """One thread, one partition per thread"""
    return EngineConfig(thread_count=1, partitions_per_thread=1)
