# graphio/binary.py
"""
GMB1 binary edge format.

    magic  b"GMB1"
    u64 LE num_vertices, u64 LE num_edges
    num_edges x (u64 LE src, u64 LE dst, f64 LE value)
"""

from logging import getLogger
from pathlib import Path
from typing import Tuple

import numpy as np

from core.errors import InputDataError
from core.types import EdgeList

logger = getLogger(__name__)

MAGIC = b"GMB1"
HEADER_DTYPE = np.dtype([("num_vertices", "<u8"), ("num_edges", "<u8")])
RECORD_DTYPE = np.dtype([("src", "<u8"), ("dst", "<u8"), ("value", "<f8")])
HEADER_SIZE = len(MAGIC) + HEADER_DTYPE.itemsize


def binary_size(num_edges: int) -> int:
    """File size in bytes for a given edge count"""
    return HEADER_SIZE + RECORD_DTYPE.itemsize * num_edges


def write_binary(path: str | Path, edges: EdgeList, num_vertices: int) -> None:
    """Write edges in GMB1"""
    header = np.array([(num_vertices, len(edges))], dtype=HEADER_DTYPE)
    records = np.empty(len(edges), dtype=RECORD_DTYPE)
    records["src"] = edges.src
    records["dst"] = edges.dst
    records["value"] = edges.values
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(header.tobytes())
        f.write(records.tobytes())
    logger.info("Wrote %s: %d edges, %d vertices", path, len(edges), num_vertices)


def read_binary(path: str | Path) -> Tuple[EdgeList, int]:
    """Read a GMB1 file"""
    path = str(path)
    try:
        size = Path(path).stat().st_size
        with open(path, "rb") as f:
            magic = f.read(len(MAGIC))
            if magic != MAGIC:
                raise InputDataError(f"bad magic {magic!r}, expected {MAGIC!r}", path)
            raw_header = f.read(HEADER_DTYPE.itemsize)
            if len(raw_header) != HEADER_DTYPE.itemsize:
                raise InputDataError("truncated header", path)
            header = np.frombuffer(raw_header, dtype=HEADER_DTYPE)[0]
            num_vertices = int(header["num_vertices"])
            num_edges = int(header["num_edges"])

            expected = binary_size(num_edges)
            if size < expected:
                raise InputDataError(
                    f"truncated file: {size} bytes, {num_edges} edges need {expected}", path
                )
            if size > expected:
                raise InputDataError(
                    f"edge count {num_edges} inconsistent with file length {size}", path
                )
            records = np.fromfile(f, dtype=RECORD_DTYPE, count=num_edges)
    except OSError as e:
        raise InputDataError(f"cannot read binary graph: {e.strerror or e}", path) from e

    edges = EdgeList(
        records["src"].astype(np.int64), records["dst"].astype(np.int64), records["value"]
    )
    if num_edges and edges.vertex_span() > num_vertices:
        raise InputDataError(
            f"edge endpoint {edges.vertex_span() - 1} outside {num_vertices} vertices", path
        )
    logger.info("Loaded %s: %d edges, %d vertices", path, num_edges, num_vertices)
    return edges, num_vertices
