# core/errors.py
"""
Exception hierarchy
"""

from typing import Optional


class GraphMatError(Exception):
    """Base class for all engine errors"""


class GraphBuildError(GraphMatError, ValueError):
    """Edges violate the build_graph contract"""


class UsageError(GraphMatError):
    """Bad command-line usage"""


class InputDataError(GraphMatError, ValueError):
    """A graph file or generator request could not be honoured"""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.path = path
        self.line = line
        self.reason = message
        location = ""
        if path is not None:
            location = f"{path}:{line}: " if line is not None else f"{path}: "
        elif line is not None:
            location = f"line {line}: "
        super().__init__(f"{location}{message}")


class ProgramError(GraphMatError, RuntimeError):
    """A vertex program callback raised during a superstep"""

    def __init__(
        self,
        callback: str,
        column: Optional[int] = None,
        row: Optional[int] = None,
        detail: str = "",
    ):
        self.callback = callback
        self.column = column
        self.row = row
        where = []
        if column is not None:
            where.append(f"column j={column}")
        if row is not None:
            where.append(f"row k={row}")
        location = f" at {', '.join(where)}" if where else ""
        suffix = f": {detail}" if detail else ""
        super().__init__(f"{callback} failed{location}{suffix}")


class VertexRangeError(GraphMatError, IndexError):
    """A vertex id argument lies outside the graph"""

    def __init__(self, what: str, vertex: int, num_vertices: int):
        self.vertex = vertex
        self.num_vertices = num_vertices
        super().__init__(f"{what} {vertex} outside [0, {num_vertices})")
