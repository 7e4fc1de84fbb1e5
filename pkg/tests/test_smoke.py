# tests/test_smoke.py
"""Desk-scale runs; speed ratios are written to run reports, the RMAT band is enforced"""

from time import perf_counter

import pytest

from algorithms.pagerank import PageRankConfig, run_pagerank
from algorithms.sssp import run_sssp
from bench.report import RunReport, results_checksum, system_facts, write_report
from core.dcsc import build_graph
from core.types import EngineConfig
from graphio import RMAT_PRESETS, PreprocessMode, RmatParams, preprocess, rmat_generate

pytestmark = pytest.mark.slow

TRIANGLE_GRAPH_EDGES = 16_746_179


def _rmat(scale, seed=0):
    params = RmatParams(scale=scale, seed=seed)
    return preprocess(rmat_generate(params), PreprocessMode.NONE), params.num_vertices


def _timed(fn):
    started = perf_counter()
    result = fn()
    return result, perf_counter() - started


def _record(path, name, scale, threads, per_thread, values, history, seconds, **ratios):
    """Write a run report carrying the measured ratios as summary entries"""
    report = RunReport(
        algorithm=name,
        graph=f"rmat-{scale}",
        threads=threads,
        partitions_per_thread=per_thread,
        partitions=threads * per_thread,
        history=history,
        total_seconds=seconds,
        checksum=results_checksum(values),
        summary=ratios,
        facts=system_facts(),
    )
    write_report(report, path)
    print("\n".join(report.lines()))
    return report


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_rmat_scale_20_edge_count(seed):
    a, b, c = RMAT_PRESETS["triangles"]
    params = RmatParams(scale=20, edge_factor=16, a=a, b=b, c=c, seed=seed)
    raw = rmat_generate(params)
    assert len(raw) == 16_777_216
    kept = len(preprocess(raw, PreprocessMode.NONE))
    assert abs(kept - TRIANGLE_GRAPH_EDGES) / TRIANGLE_GRAPH_EDGES < 0.01


def test_sssp_bitvector_not_slower_than_tuples(tmp_path):
    edges, n = _rmat(16)
    timings, results, histories = {}, {}, {}
    for kind in ("bitvector", "tuples"):
        graph = build_graph(edges, n, 8)
        config = EngineConfig(partitions_per_thread=8, sparse_vector=kind)
        # best of two damps scheduler noise
        runs = [_timed(lambda: run_sssp(graph, 0, config)) for _ in range(2)]
        (results[kind], histories[kind]), timings[kind] = min(runs, key=lambda run: run[1])
    ratio = timings["bitvector"] / timings["tuples"]
    _record(
        tmp_path / "sssp-vectors.txt",
        "sssp",
        16,
        1,
        8,
        results["bitvector"],
        histories["bitvector"],
        timings["bitvector"],
        bitvector_over_tuples=ratio,
    )
    assert results["bitvector"].tobytes() == results["tuples"].tobytes()
    assert ratio <= 1.1


def test_pagerank_thread_scaling(tmp_path):
    edges, n = _rmat(18)
    runs = {}
    for threads in (1, 8):
        graph = build_graph(edges, n, threads * 8)
        config = EngineConfig(thread_count=threads, partitions_per_thread=8)
        runs[threads] = _timed(
            lambda: run_pagerank(graph, PageRankConfig(max_iterations=10), config)
        )
    (ranks, history), seconds = runs[8]
    speedup = runs[1][1] / seconds
    report = _record(
        tmp_path / "pagerank-scaling.txt",
        "pagerank",
        18,
        8,
        8,
        ranks,
        history,
        seconds,
        speedup_8_vs_1=speedup,
    )
    assert report.iterations == 10
    assert runs[1][0][0].tobytes() == ranks.tobytes()


def test_partitions_per_thread_effect(tmp_path):
    edges, n = _rmat(18)
    runs = {}
    for per_thread in (1, 8):
        graph = build_graph(edges, n, 8 * per_thread)
        config = EngineConfig(thread_count=8, partitions_per_thread=per_thread)
        runs[per_thread] = _timed(lambda: run_sssp(graph, 0, config))
    (distances, history), seconds = runs[8]
    _record(
        tmp_path / "sssp-partitions.txt",
        "sssp",
        18,
        8,
        8,
        distances,
        history,
        seconds,
        ppt8_speedup_over_ppt1=runs[1][1] / seconds,
    )
    assert runs[1][0][0].tobytes() == distances.tobytes()
