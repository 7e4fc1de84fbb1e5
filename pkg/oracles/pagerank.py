# oracles/pagerank.py
"""
PageRank evaluated directly per iteration.

Follows the engine's active-set rules: initial ranks 1.0, every vertex
active at first, only vertices whose rank changed send next time, vertices
without out-edges send nothing, and a vertex receiving nothing keeps its rank.
"""

from typing import Iterable, List, Tuple


def pagerank_power_oracle(
    edges: Iterable[Tuple], num_vertices: int, r: float = 0.15, iterations: int = 20
) -> List[float]:
    """Ranks after `iterations` supersteps, or earlier once nothing changes"""
    edges = sorted((e[0], e[1]) for e in edges)
    out_degree = [0] * num_vertices
    for u, _ in edges:
        out_degree[u] += 1

    ranks = [1.0] * num_vertices
    active = [True] * num_vertices
    for _ in range(iterations):
        if not any(active):
            break
        received = [None] * num_vertices
        for u, v in edges:
            if active[u] and out_degree[u]:
                share = ranks[u] / out_degree[u]
                received[v] = share if received[v] is None else received[v] + share
        active = [False] * num_vertices
        for v in range(num_vertices):
            if received[v] is None:
                continue
            new = r + (1.0 - r) * received[v]
            if new != ranks[v]:
                active[v] = True
            ranks[v] = new
    return ranks
