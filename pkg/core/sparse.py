# core/sparse.py
"""
Sparse vectors used as SPMV inputs and outputs
"""

from bisect import bisect_left
from typing import Any, Iterator, Tuple

import numpy as np
from numpy.typing import ArrayLike, DTypeLike


def _index_array(indices: ArrayLike) -> np.ndarray:
    return np.asarray(indices, dtype=np.int64).reshape(-1)


def _empty_values(count: int, dtype: DTypeLike, shape: Tuple[int, ...]) -> np.ndarray:
    values = np.empty((count, *shape), dtype=dtype)
    if values.dtype == object:
        values.fill(None)
    return values


class SparseVector:
    """
    Bitvector of valid indices plus a full-length value array.

    Values are only meaningful where the bit is set. Different workers may
    write disjoint index ranges of `values`; bit updates go through one writer.
    """

    kind = "bitvector"

    def __init__(self, length: int, dtype: DTypeLike = np.float64, shape: Tuple[int, ...] = ()):
        if length < 0:
            raise ValueError(f"length must be >= 0, got {length}")
        self.length = length
        self.dtype = np.dtype(dtype)
        self.shape = tuple(shape)
        self.bits = np.zeros((length + 7) // 8, dtype=np.uint8)
        self.values = _empty_values(length, self.dtype, self.shape)

    def __contains__(self, index: int) -> bool:
        if not 0 <= index < self.length:
            return False
        return bool((self.bits[index >> 3] >> (index & 7)) & 1)

    def __repr__(self) -> str:
        return f"SparseVector(length={self.length}, nnz={self.nnz})"

    @property
    def nnz(self) -> int:
        """Number of valid entries"""
        return int(np.bitwise_count(self.bits).sum())

    def set(self, index: int, value: Any) -> None:
        """Store a value and mark the index valid"""
        if not 0 <= index < self.length:
            raise IndexError(f"index {index} out of range for length {self.length}")
        self.values[index] = value
        self.bits[index >> 3] |= np.uint8(1 << (index & 7))

    def get(self, index: int) -> Any:
        """Read a valid entry"""
        assert index in self, f"read of invalid sparse vector index {index}"
        return self.values[index]

    def contains_many(self, indices: ArrayLike) -> np.ndarray:
        """Boolean mask of which indices are valid"""
        idx = _index_array(indices)
        if idx.size == 0:
            return np.zeros(0, dtype=bool)
        return ((self.bits[idx >> 3] >> (idx & 7).astype(np.uint8)) & 1).astype(bool)

    def set_many(self, indices: ArrayLike, values: ArrayLike) -> None:
        """Bulk store; indices must be unique"""
        idx = _index_array(indices)
        if idx.size == 0:
            return
        if self.dtype == object and not isinstance(values, np.ndarray):
            for i, value in zip(idx.tolist(), values):
                self.values[i] = value
        else:
            self.values[idx] = values
        masks = np.left_shift(1, idx & 7).astype(np.uint8)
        np.bitwise_or.at(self.bits, idx >> 3, masks)

    def values_at(self, indices: ArrayLike) -> np.ndarray:
        """Gather values at indices that are known to be valid"""
        idx = _index_array(indices)
        if __debug__ and idx.size:
            assert self.contains_many(idx).all(), "gather touches invalid sparse vector indices"
        return self.values[idx]

    def indices(self) -> np.ndarray:
        """Valid indices in ascending order"""
        bits = np.unpackbits(self.bits, count=self.length, bitorder="little")
        return np.flatnonzero(bits).astype(np.int64)

    def items(self) -> Iterator[Tuple[int, Any]]:
        """(index, value) pairs in ascending index order"""
        for index in self.indices().tolist():
            yield index, self.values[index]


class TupleSparseVector:
    """
    Sorted (index, value) list representation.

    Same interface as SparseVector; kept as the comparison baseline for the
    bitvector layout.
    """

    kind = "tuples"

    def __init__(self, length: int, dtype: DTypeLike = np.float64, shape: Tuple[int, ...] = ()):
        if length < 0:
            raise ValueError(f"length must be >= 0, got {length}")
        self.length = length
        self.dtype = np.dtype(dtype)
        self.shape = tuple(shape)
        self._indices: list[int] = []
        self._values: list[Any] = []

    def __contains__(self, index: int) -> bool:
        pos = bisect_left(self._indices, index)
        return pos < len(self._indices) and self._indices[pos] == index

    def __repr__(self) -> str:
        return f"TupleSparseVector(length={self.length}, nnz={self.nnz})"

    @property
    def nnz(self) -> int:
        """Number of valid entries"""
        return len(self._indices)

    def set(self, index: int, value: Any) -> None:
        """Insert or overwrite one entry"""
        if not 0 <= index < self.length:
            raise IndexError(f"index {index} out of range for length {self.length}")
        pos = bisect_left(self._indices, index)
        if pos < len(self._indices) and self._indices[pos] == index:
            self._values[pos] = value
        else:
            self._indices.insert(pos, index)
            self._values.insert(pos, value)

    def get(self, index: int) -> Any:
        """Read a valid entry"""
        pos = bisect_left(self._indices, index)
        assert (
            pos < len(self._indices) and self._indices[pos] == index
        ), f"read of invalid sparse vector index {index}"
        return self._values[pos]

    def contains_many(self, indices: ArrayLike) -> np.ndarray:
        """Boolean mask of which indices are valid"""
        idx = _index_array(indices)
        return np.isin(idx, np.asarray(self._indices, dtype=np.int64))

    def set_many(self, indices: ArrayLike, values: ArrayLike) -> None:
        """Bulk store; indices must be unique"""
        for index, value in zip(_index_array(indices).tolist(), values):
            self.set(index, value)

    def values_at(self, indices: ArrayLike) -> np.ndarray:
        """Gather values at indices that are known to be valid"""
        idx = _index_array(indices).tolist()
        out = _empty_values(len(idx), self.dtype, self.shape)
        for i, index in enumerate(idx):
            out[i] = self.get(index)
        return out

    def indices(self) -> np.ndarray:
        """Valid indices in ascending order"""
        return np.asarray(self._indices, dtype=np.int64)

    def items(self) -> Iterator[Tuple[int, Any]]:
        """(index, value) pairs in ascending index order"""
        yield from zip(self._indices, self._values)


VECTOR_KINDS = {
    SparseVector.kind: SparseVector,
    TupleSparseVector.kind: TupleSparseVector,
}
SPARSE_VECTOR_KINDS = tuple(VECTOR_KINDS)


def make_sparse_vector(
    length: int,
    dtype: DTypeLike = np.float64,
    shape: Tuple[int, ...] = (),
    kind: str = "bitvector",
) -> SparseVector | TupleSparseVector:
    """Empty sparse vector of the requested layout"""
    try:
        cls = VECTOR_KINDS[kind]
    except KeyError as e:
        raise ValueError(f"unknown sparse vector kind {kind!r}") from e
    return cls(length, dtype=dtype, shape=shape)
