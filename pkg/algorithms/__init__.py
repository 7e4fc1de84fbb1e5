# algorithms/__init__.py
"""
algorithms
"""

import logging
from importlib import import_module
from pathlib import Path
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)
ALGORITHM_FOLDER = Path(__file__).parent
ALL_ALGORITHMS: List[Dict[str, Any]] = []
ENABLED_ALGORITHMS: Dict[str, Dict[str, Any]] = {}

PREPROCESS_MODES = ("none", "symmetrize", "dagify", "bipartite")


def load_algorithm(module_path: str) -> Optional[Dict[str, Any]]:
    """Import module and return metadata dict"""
    try:
        module = import_module(module_path)
    except (ModuleNotFoundError, ImportError) as e:
        logger.warning("Failed to import %s: %s", module_path, e)
        return None

    meta = getattr(module, "ALGORITHM_METADATA", None)
    if not meta:
        logger.debug("Module %s has no ALGORITHM_METADATA, skipping...", module_path)
        return None

    val = meta.get("is_algorithm", False)
    if not isinstance(val, bool):
        logger.warning("Algorithm %s has non-boolean is_algorithm: %r", module_path, val)
    is_algorithm = val is True

    val = meta.get("enabled", True)
    if not isinstance(val, bool):
        logger.warning("Algorithm %s has non-boolean enabled: %r", module_path, val)
    enabled = val is True

    preprocess = meta.get("preprocess", "none")
    if preprocess not in PREPROCESS_MODES:
        logger.warning(
            "Algorithm %s has unknown preprocess %r, using none", module_path, preprocess
        )
        preprocess = "none"

    try:
        priority = int(meta.get("priority", 0))
    except (ValueError, TypeError):
        logger.warning("Invalid priority for algorithm %s, defaulting to 0", module_path)
        priority = 0

    run = getattr(module, "run", None)
    if is_algorithm and not callable(run):
        logger.warning("Algorithm %s has no run() entry point, skipping...", module_path)
        return None

    return {
        "name": meta.get("name", module_path),
        "is_algorithm": is_algorithm,
        "enabled": enabled,
        "description": meta.get("description", ""),
        "version": meta.get("version", ""),
        "priority": priority,
        "preprocess": preprocess,
        "weighted": bool(meta.get("weighted", False)),
        "requires": list(meta.get("requires", [])),
        "module": module_path,
        "run": run,
    }


def discover_algorithms() -> None:
    """Discover and load all algorithm modules in this package"""
    ALL_ALGORITHMS.clear()
    ENABLED_ALGORITHMS.clear()
    for file in sorted(ALGORITHM_FOLDER.glob("*.py")):
        if file.name == "__init__.py":
            continue
        module_path = f"{__name__}.{file.stem}"
        logger.debug("Found file: %s -> module_path: %s", file, module_path)
        metadata = load_algorithm(module_path)
        if not metadata:
            continue
        if any(m["name"] == metadata["name"] for m in ALL_ALGORITHMS):
            logger.critical("Duplicate algorithm name %s in %s", metadata["name"], module_path)
            continue
        ALL_ALGORITHMS.append(metadata)

    # Sort by priority (desc), then name (asc) for deterministic order
    ALL_ALGORITHMS.sort(key=lambda a: (-a["priority"], a["name"]))
    for metadata in ALL_ALGORITHMS:
        if metadata["is_algorithm"] and metadata["enabled"]:
            ENABLED_ALGORITHMS[metadata["name"]] = metadata

    logger.debug("Enabled algorithms: %s", list(ENABLED_ALGORITHMS))


def get_algorithm(name: str) -> Dict[str, Any]:
    """Metadata of an enabled algorithm"""
    try:
        return ENABLED_ALGORITHMS[name]
    except KeyError as e:
        raise KeyError(f"unknown algorithm {name!r}; known: {', '.join(ENABLED_ALGORITHMS)}") from e


# Run discovery automatically
discover_algorithms()
