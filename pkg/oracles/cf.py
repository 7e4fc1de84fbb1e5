# oracles/cf.py
"""
Matrix-factorization objective and its central finite-difference gradient
"""

from typing import Iterable, List, Sequence, Tuple

FD_STEP = 1e-5


def _as_lists(latent: Sequence[Sequence[float]]) -> List[List[float]]:
    return [[float(c) for c in row] for row in latent]


def cf_objective(
    ratings: Iterable[Tuple], latent: Sequence[Sequence[float]], lam: float
) -> float:
    """
    Sum over ratings (u, v, g) of (g - p_u.p_v)^2 plus lam * |p|^2 for every
    vertex once. `latent` is indexed by global vertex id.
    """
    latent = _as_lists(latent)
    total = 0.0
    for u, v, g in ratings:
        dot = sum(a * b for a, b in zip(latent[u], latent[v]))
        total += (g - dot) ** 2
    for row in latent:
        total += lam * sum(c * c for c in row)
    return total


def cf_fd_gradient(
    ratings: Iterable[Tuple],
    latent: Sequence[Sequence[float]],
    lam: float,
    step: float = FD_STEP,
) -> List[List[float]]:
    """d objective / d p[v][i] by central differences"""
    ratings = list(ratings)
    point = _as_lists(latent)
    gradient = []
    for v, row in enumerate(point):
        grad_row = []
        for i, original in enumerate(row):
            point[v][i] = original + step
            plus = cf_objective(ratings, point, lam)
            point[v][i] = original - step
            minus = cf_objective(ratings, point, lam)
            point[v][i] = original
            grad_row.append((plus - minus) / (2.0 * step))
        gradient.append(grad_row)
    return gradient
