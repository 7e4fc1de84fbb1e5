# graphio/__init__.py
"""
Graph loading, preprocessing, generation and serialization
"""

from pathlib import Path
from typing import Optional, Tuple

from core.errors import InputDataError
from core.types import EdgeList

from .binary import read_binary, write_binary
from .generators import RMAT_PRESETS, RmatParams, bipartite_generate, rmat_generate
from .preprocess import PreprocessMode, check_bipartite, check_non_negative, preprocess
from .text import load_edge_list, load_matrix_market, write_edge_list

FORMATS = ("edgelist", "mtx", "bin")


def detect_format(path: str | Path) -> str:
    """Format from the file suffix; edge list otherwise"""
    suffix = Path(path).suffix.lower()
    if suffix == ".mtx":
        return "mtx"
    if suffix in (".bin", ".gmb"):
        return "bin"
    return "edgelist"


def load_graph(
    path: str | Path, fmt: Optional[str] = None, weighted: bool = False
) -> Tuple[EdgeList, int]:
    """Load any supported format"""
    fmt = fmt or detect_format(path)
    if fmt == "edgelist":
        return load_edge_list(path, weighted)
    if fmt == "mtx":
        return load_matrix_market(path)
    if fmt == "bin":
        return read_binary(path)
    raise InputDataError(f"unknown graph format {fmt!r}; expected one of {', '.join(FORMATS)}")


def save_graph(
    path: str | Path,
    edges: EdgeList,
    num_vertices: int,
    fmt: Optional[str] = None,
    weighted: Optional[bool] = None,
) -> None:
    """Write edge list or GMB1; GMB1 always carries values"""
    fmt = fmt or detect_format(path)
    if fmt == "bin":
        write_binary(path, edges, num_vertices)
    elif fmt == "edgelist":
        write_edge_list(path, edges, weighted)
    else:
        raise InputDataError(f"cannot write graph format {fmt!r}")


__all__ = [
    "FORMATS",
    "PreprocessMode",
    "RMAT_PRESETS",
    "RmatParams",
    "bipartite_generate",
    "check_bipartite",
    "check_non_negative",
    "detect_format",
    "load_edge_list",
    "load_graph",
    "load_matrix_market",
    "preprocess",
    "read_binary",
    "rmat_generate",
    "save_graph",
    "write_binary",
    "write_edge_list",
]
