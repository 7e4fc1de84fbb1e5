# utils/logging_config.py
"""
Logging configuration
"""

import logging
import logging.handlers
import sys
from pathlib import Path
from typing import Optional

from config.settings import Settings, get_settings

LOG_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)-20s | %(filename)s:%(lineno)d | %(message)s"


def _rotating(path: Path, level: int, settings: Settings) -> logging.Handler:
    handler = logging.handlers.RotatingFileHandler(
        filename=str(path),
        maxBytes=settings.log_file_max_bytes,
        backupCount=settings.log_file_backup_count,
        encoding="utf-8",
    )
    handler.setLevel(level)
    return handler


def setup_logging(settings: Optional[Settings] = None) -> logging.Logger:
    """Setup logging for CLI runs; safe to call once per command"""
    settings = settings or get_settings()
    level = getattr(logging, settings.log_level.upper())

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    root_logger.handlers.clear()

    handlers = []
    # stdout stays free for command output
    if settings.log_to_console:
        console = logging.StreamHandler(sys.stderr)
        console.setLevel(level)
        handlers.append(console)

    if settings.log_to_file:
        log_file_path = Path(settings.log_file_path)
        log_file_path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(_rotating(log_file_path, level, settings))
        handlers.append(_rotating(log_file_path.parent / "error.log", logging.ERROR, settings))

    formatter = logging.Formatter(fmt=LOG_FORMAT, datefmt="%Y-%m-%d %H:%M:%S")
    for handler in handlers:
        handler.setFormatter(formatter)
        root_logger.addHandler(handler)

    # per-superstep lines are DEBUG; only shown in debug mode
    engine_logger = logging.getLogger("core.engine")
    engine_logger.setLevel(logging.DEBUG if settings.debug_mode else max(level, logging.INFO))

    logger = logging.getLogger(__name__)
    logger.debug(
        "Logging initialized: level=%s file=%s console=%s",
        settings.log_level,
        settings.log_to_file,
        settings.log_to_console,
    )
    return logger
