# oracles/__init__.py
"""
Naive reference implementations for tests; nothing here imports the engine
"""

from .cf import cf_fd_gradient, cf_objective
from .pagerank import pagerank_power_oracle
from .paths import bellman_ford_oracle, bfs_oracle
from .spmv import DenseMatrix, dense_spmv_oracle
from .triangles import triangle_brute_oracle

__all__ = [
    "DenseMatrix",
    "bellman_ford_oracle",
    "bfs_oracle",
    "cf_fd_gradient",
    "cf_objective",
    "dense_spmv_oracle",
    "pagerank_power_oracle",
    "triangle_brute_oracle",
]
