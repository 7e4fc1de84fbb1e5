# graphio/preprocess.py
"""
Dataset preprocessing: self-loop removal, deduplication, symmetrization,
DAG orientation and bipartite checks
"""

from enum import Enum
from logging import getLogger
from typing import Optional

import numpy as np

from core.errors import InputDataError
from core.types import EdgeList

logger = getLogger(__name__)


class PreprocessMode(Enum):
    """Per-algorithm preprocessing; self-loop removal and dedup always run"""

    NONE = "none"
    SYMMETRIZE = "symmetrize"
    DAGIFY = "dagify"
    BIPARTITE_CHECK = "bipartite"


def remove_self_loops(edges: EdgeList) -> EdgeList:
    """Drop (v -> v) edges"""
    return edges.select(edges.src != edges.dst)


def deduplicate(edges: EdgeList) -> EdgeList:
    """Collapse repeated (src, dst) pairs, keeping the first occurrence"""
    if len(edges) == 0:
        return edges
    keys = edges.src * edges.vertex_span() + edges.dst
    _, first = np.unique(keys, return_index=True)
    keep = np.zeros(len(edges), dtype=bool)
    keep[first] = True
    return edges.select(keep)


def symmetrize(edges: EdgeList) -> EdgeList:
    """Add every reversed edge, then deduplicate"""
    doubled = EdgeList(
        np.concatenate((edges.src, edges.dst)),
        np.concatenate((edges.dst, edges.src)),
        np.concatenate((edges.values, edges.values)),
    )
    return deduplicate(doubled)


def dagify(edges: EdgeList) -> EdgeList:
    """Symmetrize, then keep the upper triangle (src < dst)"""
    symmetric = symmetrize(edges)
    return symmetric.select(symmetric.src < symmetric.dst)


def check_bipartite(edges: EdgeList, num_users: Optional[int] = None) -> None:
    """
    Edges must run from users to items. With num_users, users are the ids
    below it; otherwise no vertex may be both a rating source and target.
    """
    if len(edges) == 0:
        return
    if num_users is not None:
        bad = np.flatnonzero((edges.src >= num_users) | (edges.dst < num_users))
    else:
        targets = np.zeros(edges.vertex_span(), dtype=bool)
        targets[edges.dst] = True
        sources = np.zeros_like(targets)
        sources[edges.src] = True
        both = sources & targets
        bad = np.flatnonzero(both[edges.src] | both[edges.dst])
    if bad.size:
        i = int(bad[0])
        raise InputDataError(
            f"graph is not bipartite: edge ({edges.src[i] + 1} -> {edges.dst[i] + 1}) "
            "stays on one side"
        )


def check_non_negative(edges: EdgeList) -> None:
    """Reject negative edge values"""
    negative = np.flatnonzero(edges.values < 0)
    if negative.size:
        i = int(negative[0])
        raise InputDataError(
            f"negative edge weight {edges.values[i]} on edge ({edges.src[i] + 1} -> "
            f"{edges.dst[i] + 1})"
        )


def preprocess(
    edges: EdgeList, mode: PreprocessMode = PreprocessMode.NONE, num_users: Optional[int] = None
) -> EdgeList:
    """Clean edges for an algorithm"""
    before = len(edges)
    cleaned = deduplicate(remove_self_loops(edges))
    if mode is PreprocessMode.SYMMETRIZE:
        cleaned = symmetrize(cleaned)
    elif mode is PreprocessMode.DAGIFY:
        cleaned = dagify(cleaned)
    elif mode is PreprocessMode.BIPARTITE_CHECK:
        check_bipartite(cleaned, num_users)
    logger.info("Preprocess %s: %d -> %d edges", mode.value, before, len(cleaned))
    return cleaned
