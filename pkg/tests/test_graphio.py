# tests/test_graphio.py
"""Loaders, GMB1, preprocessing and generators"""

from collections import Counter, deque

import numpy as np
import pytest

from core.errors import InputDataError
from core.types import EdgeList
from graphio import (
    PreprocessMode,
    RmatParams,
    bipartite_generate,
    check_bipartite,
    check_non_negative,
    load_edge_list,
    load_graph,
    load_matrix_market,
    preprocess,
    read_binary,
    rmat_generate,
    write_binary,
    write_edge_list,
)
from graphio.binary import binary_size

from .conftest import random_edges


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def _pairs(edges):
    return [(s, d) for s, d, _ in edges.to_triples()]


# Edge list


def test_edge_list_unweighted(tmp_path):
    edges, n = load_edge_list(_write(tmp_path, "g.el", "1 2\n2 3\n"))
    assert edges.to_triples() == [(0, 1, 1.0), (1, 2, 1.0)]
    assert n == 3


def test_edge_list_weighted(tmp_path):
    edges, _ = load_edge_list(_write(tmp_path, "g.el", "1 2 2.5\n"), weighted=True)
    assert edges.to_triples() == [(0, 1, 2.5)]


def test_edge_list_weight_when_unweighted_is_error(tmp_path):
    with pytest.raises(InputDataError) as info:
        load_edge_list(_write(tmp_path, "g.el", "1 2 2.5\n"))
    assert info.value.line == 1


def test_edge_list_comments_and_line_numbers(tmp_path):
    text = "# header\n% other\n\n1 2\n3 x\n"
    with pytest.raises(InputDataError) as info:
        load_edge_list(_write(tmp_path, "g.el", text))
    assert info.value.line == 5
    assert "g.el:5:" in str(info.value)


def test_edge_list_rejects_zero_id(tmp_path):
    with pytest.raises(InputDataError, match=">= 1"):
        load_edge_list(_write(tmp_path, "g.el", "0 1\n"))


def test_edge_list_vertex_override(tmp_path):
    path = _write(tmp_path, "g.el", "1 2\n")
    assert load_edge_list(path, num_vertices=10)[1] == 10
    with pytest.raises(InputDataError):
        load_edge_list(path, num_vertices=1)


def test_missing_file_is_input_error(tmp_path):
    with pytest.raises(InputDataError):
        load_edge_list(tmp_path / "absent.el")


def test_edge_list_invalid_utf8_names_the_line(tmp_path):
    path = tmp_path / "g.el"
    path.write_bytes(b"1 2\n\xff\xfe 1 2\n")
    with pytest.raises(InputDataError, match="UTF-8") as info:
        load_edge_list(path)
    assert info.value.line == 2


def test_matrix_market_invalid_utf8_is_input_error(tmp_path):
    path = tmp_path / "g.mtx"
    path.write_bytes(b"%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 \xe9\n")
    with pytest.raises(InputDataError) as info:
        load_matrix_market(path)
    assert info.value.line == 3


def test_write_edge_list_reloads(tmp_path):
    edges = EdgeList.from_triples([(0, 1, 0.1), (2, 0, 3.0)])
    path = tmp_path / "out.el"
    write_edge_list(path, edges)
    assert path.read_text().splitlines()[0] == "1 2 0.10000000000000001"
    assert load_edge_list(path, weighted=True)[0].to_triples() == edges.to_triples()


# Matrix Market


def test_matrix_market_pattern_general(tmp_path):
    text = "%%MatrixMarket matrix coordinate pattern general\n% c\n3 3 2\n1 2\n2 3\n"
    edges, n = load_matrix_market(_write(tmp_path, "g.mtx", text))
    assert edges.to_triples() == [(0, 1, 1.0), (1, 2, 1.0)]
    assert n == 3


def test_matrix_market_symmetric_expands(tmp_path):
    text = "%%MatrixMarket matrix coordinate real symmetric\n3 3 1\n2 1 4.5\n"
    edges, _ = load_matrix_market(_write(tmp_path, "g.mtx", text))
    assert sorted(_pairs(edges)) == [(0, 1), (1, 0)]
    assert set(edges.values.tolist()) == {4.5}


def test_matrix_market_symmetric_closed_under_reversal(tmp_path, rng):
    lines = ["%%MatrixMarket matrix coordinate integer symmetric", "20 20 30"]
    for _ in range(30):
        i, j = sorted(rng.integers(1, 21, size=2).tolist(), reverse=True)
        lines.append(f"{i} {j} {int(rng.integers(1, 9))}")
    edges, _ = load_matrix_market(_write(tmp_path, "g.mtx", "\n".join(lines) + "\n"))
    triples = Counter(edges.to_triples())
    assert triples == Counter((d, s, v) for s, d, v in edges.to_triples())


def test_matrix_market_entry_out_of_bounds(tmp_path):
    text = "%%MatrixMarket matrix coordinate pattern general\n3 3 1\n4 1\n"
    with pytest.raises(InputDataError, match="outside"):
        load_matrix_market(_write(tmp_path, "g.mtx", text))


@pytest.mark.parametrize(
    "header",
    [
        "%%MatrixMarket matrix array real general",
        "%%MatrixMarket matrix coordinate complex general",
        "%%MatrixMarket matrix coordinate real hermitian",
        "not a header",
    ],
)
def test_matrix_market_unsupported_header(tmp_path, header):
    with pytest.raises(InputDataError):
        load_matrix_market(_write(tmp_path, "g.mtx", header + "\n1 1 0\n"))


def test_matrix_market_entry_count_mismatch(tmp_path):
    text = "%%MatrixMarket matrix coordinate pattern general\n3 3 2\n1 2\n"
    with pytest.raises(InputDataError, match="declares"):
        load_matrix_market(_write(tmp_path, "g.mtx", text))


# GMB1


def test_binary_empty_graph_is_header_only(tmp_path):
    path = tmp_path / "g.bin"
    write_binary(path, EdgeList(), 3)
    assert path.stat().st_size == 20
    edges, n = read_binary(path)
    assert len(edges) == 0 and n == 3


def test_binary_round_trip(tmp_path, rng):
    edges = random_edges(rng, 50, 0.1, weights=9)
    edges.values[::3] = np.pi
    path = tmp_path / "g.bin"
    write_binary(path, edges, 50)
    assert path.stat().st_size == binary_size(len(edges))
    loaded, n = read_binary(path)
    assert n == 50
    assert loaded.to_triples() == edges.to_triples()


def test_binary_bad_magic(tmp_path):
    path = tmp_path / "g.bin"
    path.write_bytes(b"XXXX" + bytes(16))
    with pytest.raises(InputDataError, match="magic"):
        read_binary(path)


def test_binary_truncated(tmp_path):
    path = tmp_path / "g.bin"
    write_binary(path, EdgeList.from_triples([(0, 1), (1, 2)]), 3)
    path.write_bytes(path.read_bytes()[:-5])
    with pytest.raises(InputDataError, match="truncated"):
        read_binary(path)


def test_binary_trailing_bytes(tmp_path):
    path = tmp_path / "g.bin"
    write_binary(path, EdgeList.from_triples([(0, 1)]), 2)
    path.write_bytes(path.read_bytes() + b"\0" * 24)
    with pytest.raises(InputDataError, match="inconsistent"):
        read_binary(path)


def test_load_graph_detects_format(tmp_path):
    path = tmp_path / "g.bin"
    write_binary(path, EdgeList.from_triples([(0, 1, 2.0)]), 2)
    assert load_graph(path)[0].to_triples() == [(0, 1, 2.0)]


# Preprocessing


@pytest.mark.parametrize("mode", list(PreprocessMode))
def test_self_loops_removed_in_every_mode(mode):
    assert len(preprocess(EdgeList.from_triples([(0, 0)]), mode)) == 0


def test_dedup_keeps_first_value():
    edges = EdgeList.from_triples([(0, 1, 5.0), (0, 1, 7.0), (1, 2, 1.0)])
    assert preprocess(edges).to_triples() == [(0, 1, 5.0), (1, 2, 1.0)]


def test_dagify_two_cycle():
    edges = EdgeList.from_triples([(0, 1), (1, 0)])
    assert _pairs(preprocess(edges, PreprocessMode.DAGIFY)) == [(0, 1)]


def test_dagify_directed_triangle():
    edges = EdgeList.from_triples([(0, 1), (1, 2), (2, 0)])
    assert sorted(_pairs(preprocess(edges, PreprocessMode.DAGIFY))) == [(0, 1), (0, 2), (1, 2)]


def test_symmetrize_adds_reverse_edges():
    edges = EdgeList.from_triples([(0, 1, 2.0)])
    assert preprocess(edges, PreprocessMode.SYMMETRIZE).to_triples() == [
        (0, 1, 2.0),
        (1, 0, 2.0),
    ]


@pytest.mark.parametrize(
    "mode", [PreprocessMode.NONE, PreprocessMode.SYMMETRIZE, PreprocessMode.DAGIFY]
)
def test_preprocess_is_idempotent(rng, mode):
    raw = random_edges(rng, 40, 0.15, weights=4, allow_loops=True)
    raw = EdgeList(np.tile(raw.src, 2), np.tile(raw.dst, 2), np.tile(raw.values, 2))
    once = preprocess(raw, mode)
    assert preprocess(once, mode).to_triples() == once.to_triples()


def _is_acyclic(edges, n):
    indegree = np.bincount(edges.dst, minlength=n)
    out = [[] for _ in range(n)]
    for s, d in _pairs(edges):
        out[s].append(d)
    queue = deque(v for v in range(n) if indegree[v] == 0)
    seen = 0
    while queue:
        u = queue.popleft()
        seen += 1
        for v in out[u]:
            indegree[v] -= 1
            if indegree[v] == 0:
                queue.append(v)
    return seen == n


def test_dagify_output_is_acyclic_and_covers_each_undirected_edge(rng):
    raw = random_edges(rng, 300, 0.02)
    dag = preprocess(raw, PreprocessMode.DAGIFY)
    assert _is_acyclic(dag, 300)
    undirected = {(min(s, d), max(s, d)) for s, d in _pairs(raw)}
    assert sorted(_pairs(dag)) == sorted(undirected)


def test_bipartite_check():
    good = EdgeList.from_triples([(0, 2), (1, 3)])
    check_bipartite(good)
    check_bipartite(good, num_users=2)
    with pytest.raises(InputDataError, match="bipartite"):
        preprocess(EdgeList.from_triples([(0, 1), (1, 2)]), PreprocessMode.BIPARTITE_CHECK)
    with pytest.raises(InputDataError):
        check_bipartite(good, num_users=1)


def test_check_non_negative():
    check_non_negative(EdgeList.from_triples([(0, 1, 0.0)]))
    with pytest.raises(InputDataError, match="negative"):
        check_non_negative(EdgeList.from_triples([(0, 1, -2.0)]))


# Generators


def test_rmat_tuple_count():
    edges = rmat_generate(RmatParams(scale=8, edge_factor=4, seed=1))
    assert len(edges) == 4 << 8
    assert edges.src.max() < 256 and edges.dst.max() < 256


def test_rmat_corner_concentration():
    edges = rmat_generate(RmatParams(scale=1, edge_factor=3, a=1.0, b=0.0, c=0.0))
    assert _pairs(edges) == [(0, 0)] * 6
    assert len(preprocess(edges)) == 0


def test_rmat_is_reproducible():
    params = RmatParams(scale=6, seed=42)
    first, second = rmat_generate(params), rmat_generate(params)
    assert np.array_equal(first.src, second.src) and np.array_equal(first.dst, second.dst)


def test_rmat_chunking_does_not_change_output():
    params = RmatParams(scale=5, edge_factor=8, seed=3)
    whole = rmat_generate(params)
    chunked = rmat_generate(params, chunk_edges=7)
    assert len(whole) == len(chunked)


def test_rmat_skews_towards_first_quadrant():
    edges = rmat_generate(RmatParams(scale=10, seed=2))
    low = np.count_nonzero((edges.src < 512) & (edges.dst < 512))
    assert low / len(edges) == pytest.approx(0.57, abs=0.02)


@pytest.mark.parametrize("bad", [dict(scale=0), dict(scale=3, a=0.9, b=0.2), dict(scale=3, c=-0.1)])
def test_rmat_params_validation(bad):
    with pytest.raises(InputDataError):
        RmatParams(**bad)


def test_bipartite_single_rating():
    edges = bipartite_generate(1, 1, 1, seed=0)
    assert _pairs(edges) == [(0, 1)]
    assert 1.0 <= edges.values[0] <= 5.0


def test_bipartite_no_ratings():
    assert len(bipartite_generate(5, 5, 0)) == 0


def test_bipartite_infeasible():
    with pytest.raises(InputDataError):
        bipartite_generate(2, 2, 5)


@pytest.mark.parametrize("ratings", [30, 150, 199])
def test_bipartite_shape(ratings):
    users, items = 20, 10
    edges = bipartite_generate(users, items, ratings, seed=4)
    assert len(edges) == ratings
    assert len(set(_pairs(edges))) == ratings
    assert np.all(edges.src < users)
    assert np.all((edges.dst >= users) & (edges.dst < users + items))
    assert set(edges.values.tolist()) <= {1.0, 2.0, 3.0, 4.0, 5.0}
    check_bipartite(edges, num_users=users)


def test_dense_bipartite_keeps_item_skew():
    users, items = 40, 16
    edges = bipartite_generate(users, items, 400, seed=2)
    per_item = np.bincount(edges.dst - users, minlength=items)
    assert per_item.sum() == 400
    # item 0 sits in the popular half at every level, item 15 never does
    assert per_item[0] > per_item[15]
    assert per_item[:8].sum() > per_item[8:].sum()


@pytest.mark.parametrize("skew", [0.0, 1.0, 1.5])
def test_bipartite_skew_out_of_range(skew):
    with pytest.raises(InputDataError, match="skew"):
        bipartite_generate(4, 4, 2, skew=skew)
