# graphio/generators.py
"""
Synthetic graph generators: recursive-quadrant RMAT and skewed bipartite ratings
"""

import math
from dataclasses import dataclass
from logging import getLogger

import numpy as np

from core.errors import InputDataError
from core.types import EdgeList

logger = getLogger(__name__)

# quadrant probabilities (a, b, c) used for the benchmark datasets
RMAT_PRESETS = {
    "graph500": (0.57, 0.19, 0.19),
    "triangles": (0.45, 0.15, 0.15),
    "sssp": (0.50, 0.10, 0.10),
}

CHUNK_EDGES = 1 << 20


@dataclass(frozen=True)
class RmatParams:
    """2**scale vertices, edge_factor * 2**scale edge tuples"""

    scale: int
    edge_factor: int = 16
    a: float = 0.57
    b: float = 0.19
    c: float = 0.19
    seed: int = 0

    def __post_init__(self):
        if self.scale < 1:
            raise InputDataError(f"RMAT scale must be >= 1, got {self.scale}")
        if self.edge_factor < 0:
            raise InputDataError(f"RMAT edge factor must be >= 0, got {self.edge_factor}")
        if min(self.a, self.b, self.c) < 0:
            raise InputDataError("RMAT quadrant probabilities must be >= 0")
        # small slack for presets typed in decimal
        if self.a + self.b + self.c > 1.0 + 1e-12:
            raise InputDataError(f"RMAT a+b+c = {self.a + self.b + self.c} exceeds 1")

    @property
    def d(self) -> float:
        """Bottom-right quadrant probability"""
        return max(0.0, 1.0 - self.a - self.b - self.c)

    @property
    def num_vertices(self) -> int:
        """Vertex count"""
        return 1 << self.scale

    @property
    def num_edges(self) -> int:
        """Raw tuple count before preprocessing"""
        return self.edge_factor << self.scale


def _rmat_chunk(rng: np.random.Generator, p: RmatParams, size: int):
    src = np.zeros(size, dtype=np.int64)
    dst = np.zeros(size, dtype=np.int64)
    ab = p.a + p.b
    abc = ab + p.c
    for _ in range(p.scale):
        r = rng.random(size)
        row_bit = r >= ab
        col_bit = ((r >= p.a) & (r < ab)) | (r >= abc)
        src = (src << 1) | row_bit
        dst = (dst << 1) | col_bit
    return src, dst


def rmat_generate(p: RmatParams, chunk_edges: int = CHUNK_EDGES) -> EdgeList:
    """
    Each tuple descends `scale` levels, picking a quadrant per level with
    probabilities a/b/c/d. Duplicates and self-loops are left in place.
    """
    rng = np.random.default_rng(p.seed)
    total = p.num_edges
    src_parts, dst_parts = [], []
    done = 0
    while done < total:
        size = min(chunk_edges, total - done)
        src, dst = _rmat_chunk(rng, p, size)
        src_parts.append(src)
        dst_parts.append(dst)
        done += size

    if src_parts:
        edges = EdgeList.from_arrays(np.concatenate(src_parts), np.concatenate(dst_parts))
    else:
        edges = EdgeList()
    logger.info(
        "RMAT scale=%d ef=%d (a=%.2f b=%.2f c=%.2f) seed=%d: %d tuples",
        p.scale,
        p.edge_factor,
        p.a,
        p.b,
        p.c,
        p.seed,
        len(edges),
    )
    return edges


def _skewed_items(rng: np.random.Generator, num_items: int, size: int, top: float) -> np.ndarray:
    """One-dimensional RMAT descent; low ids are the popular items"""
    levels = max(1, math.ceil(math.log2(num_items))) if num_items > 1 else 0
    items = np.zeros(size, dtype=np.int64)
    pending = np.arange(size)
    while pending.size:
        draw = np.zeros(pending.size, dtype=np.int64)
        for _ in range(levels):
            draw = (draw << 1) | (rng.random(pending.size) >= top)
        items[pending] = draw
        pending = pending[draw >= num_items]
    return items


def _item_weights(num_items: int, top: float) -> np.ndarray:
    """Probability of each item under _skewed_items, rejected draws excluded"""
    levels = max(1, math.ceil(math.log2(num_items))) if num_items > 1 else 0
    ones = np.bitwise_count(np.arange(num_items, dtype=np.uint64)).astype(np.int64)
    weights = top ** (levels - ones) * (1.0 - top) ** ones
    return weights / weights.sum()


def _weighted_keys(
    rng: np.random.Generator, num_users: int, num_items: int, num_ratings: int, top: float
) -> np.ndarray:
    """Distinct (user, item) keys drawn without replacement, item skew kept"""
    p = np.tile(_item_weights(num_items, top), num_users) / num_users
    keys = rng.choice(num_users * num_items, size=num_ratings, replace=False, p=p)
    return keys.astype(np.int64)


def _first_unique(keys: np.ndarray) -> np.ndarray:
    _, first = np.unique(keys, return_index=True)
    return keys[np.sort(first)]


def bipartite_generate(
    num_users: int,
    num_items: int,
    num_ratings: int,
    seed: int = 0,
    skew: float = 0.76,
    max_rounds: int = 64,
) -> EdgeList:
    """
    Distinct user -> item rating edges with integer ratings in [1, 5].
    Users are ids [0, num_users), items [num_users, num_users + num_items).

    Item popularity follows a one-dimensional RMAT descent with `skew` as the
    probability of the low half. Sparse requests draw and deduplicate; dense ones
    (over half the user x item grid) sample keys without replacement under the
    same item weights.
    """
    if num_users < 0 or num_items < 0:
        raise InputDataError("user and item counts must be >= 0")
    if not 0.0 < skew < 1.0:
        raise InputDataError(f"item skew must lie in (0, 1), got {skew}")
    capacity = num_users * num_items
    if num_ratings < 0 or num_ratings > capacity:
        raise InputDataError(
            f"cannot place {num_ratings} distinct ratings among "
            f"{num_users} users x {num_items} items"
        )
    if num_ratings == 0:
        return EdgeList()

    rng = np.random.default_rng(seed)
    if 2 * num_ratings > capacity:
        keys = _weighted_keys(rng, num_users, num_items, num_ratings, skew)
    else:
        keys = np.zeros(0, dtype=np.int64)
        for _ in range(max_rounds):
            missing = num_ratings - len(keys)
            if missing <= 0:
                break
            batch = missing + missing // 2 + 16
            users = rng.integers(0, num_users, size=batch)
            items = _skewed_items(rng, num_items, batch, skew)
            keys = _first_unique(np.concatenate((keys, users * num_items + items)))
        if len(keys) < num_ratings:
            # heavy skew saturates popular items; finish uniformly
            used = np.zeros(capacity, dtype=bool)
            used[keys] = True
            free = np.flatnonzero(~used)
            extra = rng.choice(free, size=num_ratings - len(keys), replace=False)
            keys = np.concatenate((keys, extra))
        keys = keys[:num_ratings]

    ratings = rng.integers(1, 6, size=num_ratings).astype(np.float64)
    edges = EdgeList(keys // num_items, num_users + keys % num_items, ratings)
    logger.info(
        "Bipartite users=%d items=%d seed=%d: %d ratings", num_users, num_items, seed, len(edges)
    )
    return edges
