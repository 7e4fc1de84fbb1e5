# oracles/triangles.py
"""
Brute-force triangle count over a DAG-ified edge set (every edge u < v)
"""

from typing import Iterable, Tuple


def triangle_brute_oracle(edges: Iterable[Tuple], num_vertices: int) -> int:
    """Triples u < v < w with u->v, v->w and u->w all present"""
    present = {(e[0], e[1]) for e in edges}
    count = 0
    for u, v in present:
        if u >= v:
            continue
        for w in range(v + 1, num_vertices):
            if (v, w) in present and (u, w) in present:
                count += 1
    return count
