# oracles/paths.py
"""
Textbook BFS and Bellman-Ford over plain edge tuples
"""

from collections import deque
from typing import Iterable, List, Tuple

INF = float("inf")


def bfs_oracle(edges: Iterable[Tuple], num_vertices: int, root: int) -> List[float]:
    """Hop counts along directed edges; unreachable stays inf"""
    adjacency: List[List[int]] = [[] for _ in range(num_vertices)]
    for edge in edges:
        adjacency[edge[0]].append(edge[1])
    distances = [INF] * num_vertices
    distances[root] = 0.0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in adjacency[u]:
            if distances[v] == INF:
                distances[v] = distances[u] + 1.0
                queue.append(v)
    return distances


def bellman_ford_oracle(edges: Iterable[Tuple], num_vertices: int, source: int) -> List[float]:
    """|V| - 1 full relaxation sweeps"""
    edges = [(e[0], e[1], e[2] if len(e) > 2 else 1.0) for e in edges]
    distances = [INF] * num_vertices
    distances[source] = 0.0
    for _ in range(max(0, num_vertices - 1)):
        for u, v, w in edges:
            if distances[u] + w < distances[v]:
                distances[v] = distances[u] + w
    return distances
