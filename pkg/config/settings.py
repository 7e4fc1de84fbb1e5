# config/settings.py
"""
Configuration management
"""

from dataclasses import dataclass, replace
from functools import lru_cache
from os import getenv

from dotenv import load_dotenv
from psutil import cpu_count

from core.sparse import SPARSE_VECTOR_KINDS
from core.types import EngineConfig

load_dotenv()

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _default_threads() -> int:
    """Physical cores, falling back to logical ones"""
    return cpu_count(logical=False) or cpu_count() or 1


def _positive_int(name: str, default: int) -> int:
    raw = getenv(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError as e:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from e
    if value < 1:
        raise ValueError(f"{name} must be >= 1, got {value}")
    return value


@dataclass
class Settings:  # pylint: disable=too-many-instance-attributes
    """
    settings
    """

    # Engine
    threads: int = 1
    partitions_per_thread: int = 8
    max_iterations: int = 100
    deterministic_reduction: bool = True
    sparse_vector: str = "bitvector"

    # Logging
    log_level: str = "INFO"
    log_to_file: bool = False
    log_to_console: bool = True
    log_file_max_bytes: int = 10 * 1024 * 1024
    log_file_backup_count: int = 5
    log_file_path: str = "data/logs/graphmat.log"

    # Debug
    debug_mode: bool = False

    @classmethod
    def from_env(cls) -> "Settings":
        """
        from env
        """
        sparse_vector = getenv("GRAPHMAT_SPARSE_VECTOR", "bitvector").lower()
        if sparse_vector not in SPARSE_VECTOR_KINDS:
            raise ValueError(
                f"GRAPHMAT_SPARSE_VECTOR must be one of {SPARSE_VECTOR_KINDS}, "
                f"got {sparse_vector!r}"
            )
        log_level = getenv("LOG_LEVEL", "INFO").upper()
        if log_level not in LOG_LEVELS:
            raise ValueError(f"LOG_LEVEL must be one of {LOG_LEVELS}, got {log_level!r}")
        return cls(
            threads=_positive_int("GRAPHMAT_THREADS", _default_threads()),
            partitions_per_thread=_positive_int("GRAPHMAT_PARTITIONS_PER_THREAD", 8),
            max_iterations=_positive_int("GRAPHMAT_MAX_ITERATIONS", 100),
            deterministic_reduction=getenv("GRAPHMAT_DETERMINISTIC", "true").lower() == "true",
            sparse_vector=sparse_vector,
            log_level=log_level,
            log_to_file=getenv("LOG_TO_FILE", "false").lower() == "true",
            log_to_console=getenv("LOG_TO_CONSOLE", "true").lower() == "true",
            log_file_max_bytes=int(getenv("LOG_FILE_MAX_BYTES", "10485760")),
            log_file_backup_count=int(getenv("LOG_FILE_BACKUP_COUNT", "5")),
            log_file_path=getenv("LOG_FILE_PATH", "data/logs/graphmat.log"),
            debug_mode=getenv("DEBUG_MODE", "false").lower() == "true",
        )

    def engine_config(self, **overrides) -> EngineConfig:
        """Engine defaults from these settings; None overrides are ignored"""
        base = EngineConfig(
            max_iterations=self.max_iterations,
            thread_count=self.threads,
            partitions_per_thread=self.partitions_per_thread,
            deterministic_reduction=self.deterministic_reduction,
            sparse_vector=self.sparse_vector,
        )
        return replace(base, **{k: v for k, v in overrides.items() if v is not None})


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    Settings instance
    """
    return Settings.from_env()
