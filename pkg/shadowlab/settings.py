"""
Process-wide settings read from the environment.

Every value can be overridden per call by the functions that use it; these
switches only change the defaults.
"""

import os

_TRUE_VALUES = ("true", "1", "yes")

_SHOW_PROGRESS = (
    os.environ.get("SHADOWLAB_SHOW_PROGRESS", "").lower() in _TRUE_VALUES
)


def _int_from_env(name: str, default: int) -> int:
    raw = os.environ.get(name, "")
    try:
        value = int(raw)
    except ValueError:
        return default
    return value if value > 0 else default


_MAX_WORKERS = _int_from_env("SHADOWLAB_MAX_WORKERS", 4)
_ENUMERATION_GUARD = _int_from_env("SHADOWLAB_ENUMERATION_GUARD", 20)
_GRAPH_CACHE_SIZE = _int_from_env("SHADOWLAB_GRAPH_CACHE_SIZE", 16)


def is_progress_enabled() -> bool:
    """Check if progress bars are shown by default"""
    return _SHOW_PROGRESS


def enable_progress() -> None:
    """Show progress bars in sweeps by default"""
    global _SHOW_PROGRESS
    _SHOW_PROGRESS = True


def disable_progress() -> None:
    """Hide progress bars in sweeps by default"""
    global _SHOW_PROGRESS
    _SHOW_PROGRESS = False


def get_max_workers() -> int:
    """Default worker count for parallel sweeps"""
    return _MAX_WORKERS


def set_max_workers(count: int) -> None:
    """Change the default worker count for parallel sweeps"""
    global _MAX_WORKERS
    if count < 1:
        from .exceptions import InvalidParameterError

        raise InvalidParameterError("max_workers", count)
    _MAX_WORKERS = count


def get_enumeration_guard() -> int:
    """Largest point count accepted by exhaustive ICT enumeration"""
    return _ENUMERATION_GUARD


def set_enumeration_guard(size: int) -> None:
    """Change the largest point count accepted by exhaustive enumeration"""
    global _ENUMERATION_GUARD
    if size < 1:
        from .exceptions import InvalidParameterError

        raise InvalidParameterError("enumeration_guard", size)
    _ENUMERATION_GUARD = size


def get_graph_cache_size() -> int:
    """Number of chain graphs kept per system"""
    return _GRAPH_CACHE_SIZE


def set_graph_cache_size(size: int) -> None:
    """Change the number of chain graphs kept by systems created afterwards"""
    global _GRAPH_CACHE_SIZE
    if size < 1:
        from .exceptions import InvalidParameterError

        raise InvalidParameterError("graph_cache_size", size)
    _GRAPH_CACHE_SIZE = size
