# bench/report.py
"""
Result dumps and key=value run reports
"""

from dataclasses import dataclass, field
from logging import getLogger
from pathlib import Path
from platform import python_version, release, system
from sys import platform
from typing import Any, Dict, List, Optional

import numpy as np
from psutil import Process, cpu_count

from core.engine import IterationStats

try:
    from resource import RUSAGE_SELF, getrusage
except ImportError:  # Windows
    getrusage = None

logger = getLogger(__name__)

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
MASK64 = 0xFFFFFFFFFFFFFFFF


def fnv1a_64(data: bytes, seed: int = FNV_OFFSET) -> int:
    """64-bit FNV-1a"""
    h, prime, mask = seed, FNV_PRIME, MASK64
    for byte in data:
        h = ((h ^ byte) * prime) & mask
    return h


def file_checksum(path: str | Path, chunk_size: int = 1 << 20) -> int:
    """FNV-1a over a file's bytes"""
    h = FNV_OFFSET
    with open(path, "rb") as f:
        while chunk := f.read(chunk_size):
            h = fnv1a_64(chunk, h)
    return h


def _format_scalar(value: Any) -> str:
    if isinstance(value, (int, np.integer, bool, np.bool_)):
        return str(int(value))
    return f"{float(value):.17g}"


def format_value(value: Any) -> str:
    """17 significant digits, inf as "inf", vectors comma-joined"""
    if isinstance(value, np.ndarray) and value.ndim > 0:
        return ",".join(_format_scalar(v) for v in value.tolist())
    return _format_scalar(value)


def format_results(values: Any) -> str:
    """One "vertex<TAB>value" line per vertex, 1-based"""
    values = np.asarray(values)
    if values.ndim == 1:
        return "".join(f"{v + 1}\t{_format_scalar(x)}\n" for v, x in enumerate(values.tolist()))
    return "".join(f"{v + 1}\t{format_value(row)}\n" for v, row in enumerate(values))


def results_checksum(values: Any) -> int:
    """Checksum of the result dump without writing it"""
    return fnv1a_64(format_results(values).encode("utf-8"))


def write_results(values: Any, path: str | Path) -> int:
    """Write the result dump and return its checksum"""
    data = format_results(values).encode("utf-8")
    Path(path).write_bytes(data)
    logger.info("Wrote results %s (%d vertices)", path, len(np.asarray(values)))
    return fnv1a_64(data)


def peak_rss_bytes() -> int:
    """High-water resident set size of this process"""
    info = Process().memory_info()
    peak = getattr(info, "peak_wset", None)
    if peak is None and getrusage is not None:
        # ru_maxrss is KiB on Linux, bytes on macOS
        peak = getrusage(RUSAGE_SELF).ru_maxrss * (1 if platform == "darwin" else 1024)
    return max(int(peak or 0), info.rss)


def system_facts() -> Dict[str, str]:
    """Host facts recorded next to timings"""
    return {
        "system": f"{system()} {release()}",
        "python": python_version(),
        "cpu_count": str(cpu_count(logical=False) or cpu_count() or 1),
        "peak_rss_mb": f"{peak_rss_bytes() / 1024 / 1024:.1f}",
    }


@dataclass
class RunReport:  # pylint: disable=too-many-instance-attributes
    """Timing and checksum of one algorithm run"""

    algorithm: str
    graph: str
    threads: int
    partitions_per_thread: int
    partitions: int
    history: List[IterationStats] = field(default_factory=list)
    total_seconds: float = 0.0
    checksum: int = 0
    summary: Dict[str, Any] = field(default_factory=dict)
    facts: Dict[str, str] = field(default_factory=dict)

    @property
    def iterations(self) -> int:
        """Supersteps executed"""
        return len(self.history)

    @property
    def spmv_seconds(self) -> float:
        """Sum of SPMV phases"""
        return sum(s.spmv_seconds for s in self.history)

    @property
    def mean_iteration_seconds(self) -> Optional[float]:
        """None when nothing ran"""
        if not self.history:
            return None
        return sum(s.total_seconds for s in self.history) / len(self.history)

    def lines(self) -> List[str]:
        """key=value lines"""
        mean = self.mean_iteration_seconds
        out = [
            f"algorithm={self.algorithm}",
            f"graph={self.graph}",
            f"threads={self.threads}",
            f"partitions_per_thread={self.partitions_per_thread}",
            f"partitions={self.partitions}",
            f"iterations={self.iterations}",
            "iteration_seconds=" + ",".join(f"{s.total_seconds:.9f}" for s in self.history),
            f"spmv_seconds={self.spmv_seconds:.9f}",
            f"total_seconds={self.total_seconds:.9f}",
            f"time_per_iteration={'na' if mean is None else f'{mean:.9f}'}",
            f"checksum={self.checksum:016x}",
        ]
        for key, value in self.summary.items():
            if isinstance(value, (list, tuple)):
                value = ",".join(format_value(v) for v in value)
            elif not isinstance(value, str):
                value = format_value(value)
            out.append(f"summary.{key}={value}")
        out.extend(f"{key}={value}" for key, value in self.facts.items())
        return out


def write_report(report: RunReport, path: str | Path) -> None:
    """Write a RunReport"""
    Path(path).write_text("\n".join(report.lines()) + "\n", encoding="utf-8")
    logger.info("Wrote report %s", path)
