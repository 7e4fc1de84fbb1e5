# graphio/text.py
"""
Edge-list and Matrix Market text formats (1-based ids on disk)
"""

from logging import getLogger
from pathlib import Path
from typing import Iterator, Optional, Tuple

import numpy as np

from core.errors import InputDataError
from core.types import EdgeList

logger = getLogger(__name__)

MM_FIELDS = ("real", "integer", "pattern")
MM_SYMMETRIES = ("general", "symmetric")


def _decode_lines(f, path: str, start: int = 1) -> Iterator[Tuple[int, str]]:
    """Numbered text lines of a binary stream; bad UTF-8 is an input error"""
    for line_no, raw in enumerate(f, start=start):
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as e:
            raise InputDataError(
                f"not UTF-8 text (byte {raw[e.start]:#04x} at column {e.start + 1})",
                path,
                line_no,
            ) from e
        yield line_no, text


def _parse_id(token: str, path: str, line_no: int) -> int:
    try:
        vertex = int(token)
    except ValueError as e:
        raise InputDataError(f"vertex id {token!r} is not an integer", path, line_no) from e
    if vertex <= 0:
        raise InputDataError(f"vertex id {vertex} must be >= 1", path, line_no)
    return vertex - 1


def _parse_value(token: str, path: str, line_no: int) -> float:
    try:
        return float(token)
    except ValueError as e:
        raise InputDataError(f"edge value {token!r} is not a number", path, line_no) from e


def load_edge_list(
    path: str | Path, weighted: bool = False, num_vertices: Optional[int] = None
) -> Tuple[EdgeList, int]:
    """
    "src dst [weight]" lines; '#' and '%' start comments.

    The vertex count is the largest id seen unless `num_vertices` is given.
    """
    path = str(path)
    expected = 3 if weighted else 2
    src, dst, values = [], [], []
    try:
        with open(path, "rb") as f:
            for line_no, line in _decode_lines(f, path):
                stripped = line.strip()
                if not stripped or stripped[0] in "#%":
                    continue
                tokens = stripped.split()
                if len(tokens) != expected:
                    if len(tokens) == 3 and not weighted:
                        reason = "weight present but the graph was loaded as unweighted"
                    else:
                        reason = f"expected {expected} fields, found {len(tokens)}"
                    raise InputDataError(reason, path, line_no)
                src.append(_parse_id(tokens[0], path, line_no))
                dst.append(_parse_id(tokens[1], path, line_no))
                values.append(_parse_value(tokens[2], path, line_no) if weighted else 1.0)
    except OSError as e:
        raise InputDataError(f"cannot read edge list: {e.strerror or e}", path) from e

    edges = EdgeList(np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64), values)
    span = edges.vertex_span()
    if num_vertices is None:
        num_vertices = span
    elif num_vertices < span:
        raise InputDataError(f"vertex count {num_vertices} is below the largest id {span}", path)
    logger.info("Loaded %s: %d edges, %d vertices", path, len(edges), num_vertices)
    return edges, num_vertices


def _read_header(f, path: str) -> Tuple[str, str]:
    _, first = next(_decode_lines([f.readline()], path))
    header = first.split()
    if len(header) != 5 or header[0].lower() != "%%matrixmarket":
        raise InputDataError("missing %%MatrixMarket header", path, 1)
    obj, fmt, field, symmetry = (token.lower() for token in header[1:])
    if obj != "matrix" or fmt != "coordinate":
        raise InputDataError(f"unsupported Matrix Market layout '{obj} {fmt}'", path, 1)
    if field not in MM_FIELDS:
        raise InputDataError(f"unsupported Matrix Market field '{field}'", path, 1)
    if symmetry not in MM_SYMMETRIES:
        raise InputDataError(f"unsupported Matrix Market symmetry '{symmetry}'", path, 1)
    return field, symmetry


def load_matrix_market(path: str | Path) -> Tuple[EdgeList, int]:
    """Coordinate real/integer/pattern, general/symmetric"""
    path = str(path)
    src, dst, values = [], [], []
    try:
        with open(path, "rb") as f:
            field, symmetry = _read_header(f, path)
            size = None
            declared = 0
            for line_no, line in _decode_lines(f, path, start=2):
                stripped = line.strip()
                if not stripped or stripped.startswith("%"):
                    continue
                tokens = stripped.split()
                if size is None:
                    if len(tokens) != 3:
                        raise InputDataError("size line needs 'rows cols entries'", path, line_no)
                    try:
                        size = tuple(int(token) for token in tokens)
                    except ValueError as e:
                        raise InputDataError("size line is not integral", path, line_no) from e
                    continue

                need = 2 if field == "pattern" else 3
                if len(tokens) != need:
                    raise InputDataError(
                        f"expected {need} fields, found {len(tokens)}", path, line_no
                    )
                row = _parse_id(tokens[0], path, line_no)
                col = _parse_id(tokens[1], path, line_no)
                if row >= size[0] or col >= size[1]:
                    raise InputDataError(
                        f"entry ({row + 1}, {col + 1}) outside declared {size[0]}x{size[1]}",
                        path,
                        line_no,
                    )
                value = 1.0 if field == "pattern" else _parse_value(tokens[2], path, line_no)
                declared += 1
                src.append(row)
                dst.append(col)
                values.append(value)
                if symmetry == "symmetric" and row != col:
                    src.append(col)
                    dst.append(row)
                    values.append(value)
    except OSError as e:
        raise InputDataError(f"cannot read Matrix Market file: {e.strerror or e}", path) from e

    if size is None:
        raise InputDataError("missing size line", path)
    if declared != size[2]:
        raise InputDataError(f"size line declares {size[2]} entries, found {declared}", path)

    edges = EdgeList(np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64), values)
    num_vertices = max(size[0], size[1])
    logger.info("Loaded %s: %d edges, %d vertices", path, len(edges), num_vertices)
    return edges, num_vertices


def format_value(value: float) -> str:
    """Shortest exact text for a float: 17 significant digits"""
    return f"{value:.17g}"


def write_edge_list(path: str | Path, edges: EdgeList, weighted: Optional[bool] = None) -> None:
    """1-based "src dst [value]" lines; values written when any differs from 1"""
    if weighted is None:
        weighted = bool(len(edges)) and bool(np.any(edges.values != 1.0))
    with open(path, "w", encoding="utf-8") as f:
        for s, d, v in zip(edges.src.tolist(), edges.dst.tolist(), edges.values.tolist()):
            if weighted:
                f.write(f"{s + 1} {d + 1} {format_value(v)}\n")
            else:
                f.write(f"{s + 1} {d + 1}\n")
    logger.info("Wrote %s: %d edges", path, len(edges))
