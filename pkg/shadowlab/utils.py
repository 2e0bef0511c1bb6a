"""
Utility functions for shadowlab package
"""

import threading
from collections import OrderedDict
from fractions import Fraction
from typing import Generic, Hashable, Iterable, List, Optional, Sequence, TypeVar

from .dyadic import as_exact, format_scalar, parse_scalar
from .exceptions import InvalidParameterError, SystemParseError


def exact_parameter(name: str, value, allow_zero: bool = False) -> Fraction:
    """
    Validate an exact scalar parameter.

    Parameters
    ----------
    name : str
        Parameter name used in the error message.
    value : int, Fraction or str
        The value; strings are parsed as canonical scalar text.
    allow_zero : bool, default False
        Accept zero (tolerances) in addition to positive values.

    Returns
    -------
    Fraction
        The value as an exact scalar (``Dyadic`` when possible).

    Raises
    ------
    InvalidParameterError
        If the value is inexact, malformed or out of range.
    """
    try:
        exact = parse_scalar(value) if isinstance(value, str) else as_exact(value)
    except (TypeError, SystemParseError):
        raise InvalidParameterError(name, value) from None
    if exact < 0 or (exact == 0 and not allow_zero):
        raise InvalidParameterError(name, format_scalar(exact))
    return exact


def positive_int(name: str, value, minimum: int = 1) -> int:
    """Validate an integer parameter that must be at least ``minimum``"""
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise InvalidParameterError(name, value)
    return value


def choice(name: str, value: str, valid: Sequence[str]) -> str:
    """Validate a keyword parameter against its allowed values"""
    if value not in valid:
        raise InvalidParameterError(name, value, list(valid))
    return value


def format_set(ids: Iterable[int]) -> str:
    """Short text form of a point set, e.g. ``{0 3 7}``"""
    return "{" + " ".join(str(i) for i in ids) + "}"


def describe_set(ids: Sequence[int], label: Optional[str] = None) -> str:
    if label:
        return f"{label} {format_set(ids)}"
    return format_set(ids)


def scalar_list(values: Iterable) -> List[str]:
    """Canonical text of several exact scalars"""
    return [format_scalar(v) for v in values]


V = TypeVar("V")


class LRUCache(Generic[V]):
    """
    Thread-safe mapping that keeps the ``maxsize`` most recently used entries.

    Parameters
    ----------
    maxsize : int
        Largest number of entries kept; older entries are evicted first.
    """

    def __init__(self, maxsize: int):
        self.maxsize = positive_int("maxsize", maxsize)
        self._data: "OrderedDict[Hashable, V]" = OrderedDict()
        self._lock = threading.Lock()

    def get(self, key: Hashable) -> Optional[V]:
        with self._lock:
            if key not in self._data:
                return None
            self._data.move_to_end(key)
            return self._data[key]

    def put(self, key: Hashable, value: V) -> None:
        with self._lock:
            self._data[key] = value
            self._data.move_to_end(key)
            while len(self._data) > self.maxsize:
                self._data.popitem(last=False)

    def __contains__(self, key: Hashable) -> bool:
        with self._lock:
            return key in self._data

    def __len__(self) -> int:
        with self._lock:
            return len(self._data)
