# oracles/spmv.py
"""
Dense triple-loop reference for generalized SpMV
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence


@dataclass
class DenseMatrix:
    """Row-major n_rows x n_cols values; None marks an absent entry"""

    n_rows: int
    n_cols: int
    values: List[Optional[float]] = field(default_factory=list)

    def __post_init__(self):
        if not self.values:
            self.values = [None] * (self.n_rows * self.n_cols)
        if len(self.values) != self.n_rows * self.n_cols:
            raise ValueError(
                f"{len(self.values)} values for a {self.n_rows}x{self.n_cols} matrix"
            )

    def __getitem__(self, key):
        row, col = key
        return self.values[row * self.n_cols + col]

    def __setitem__(self, key, value):
        row, col = key
        self.values[row * self.n_cols + col] = value

    @classmethod
    def transpose_of(cls, edges, num_vertices: int) -> "DenseMatrix":
        """G^T: entry (dst, src) holds the edge value"""
        m = cls(num_vertices, num_vertices)
        for edge in edges:
            value = edge[2] if len(edge) > 2 else 1.0
            m[edge[1], edge[0]] = value
        return m


def dense_spmv_oracle(
    m: DenseMatrix,
    x: Any,
    process: Callable[[Any, float, Any], Any],
    reduce: Callable[[Any, Any], Any],
    identity: Any,
    properties: Optional[Sequence[Any]] = None,
) -> Dict[int, Any]:
    """
    y[k] folds process(x[j], m[k][j], properties[k]) over every present
    entry with x valid at j, columns ascending then rows ascending.
    `x` is a mapping or anything with items().
    """
    entries: Mapping[int, Any] = x if isinstance(x, Mapping) else dict(x.items())
    y: Dict[int, Any] = {}
    for j in range(m.n_cols):
        if j not in entries:
            continue
        for k in range(m.n_rows):
            value = m[k, j]
            if value is None:
                continue
            prop = properties[k] if properties is not None else None
            y[k] = reduce(y.get(k, identity), process(entries[j], value, prop))
    return y
