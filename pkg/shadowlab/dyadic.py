"""
Exact dyadic scalars.

A dyadic is a rational ``n/2^k``. All coordinates of the planar builders and
all of their distances are dyadic; the circle and stack builders may need
other exact rationals (residues ``j/q`` for odd ``q``, heights ``1/n``),
which stay plain :class:`fractions.Fraction` values.

Text forms are bit-exact and canonical:

- dyadic values are written ``n/2^k`` with ``k = 0`` or ``n`` odd
  (``3/2^2``, ``-1/2^0``, ``0/2^0``);
- any other rational is written ``n/d`` in lowest terms with ``d`` not a
  power of two (``1/3``, ``-2/5``).
"""

import re
from fractions import Fraction
from typing import Union

from .exceptions import SystemParseError

Scalar = Union[Fraction, int]

_DYADIC_RE = re.compile(r"^(-?)(0|[1-9][0-9]*)/2\^(0|[1-9][0-9]*)$")
_RATIONAL_RE = re.compile(r"^(-?)(0|[1-9][0-9]*)/([1-9][0-9]*)$")


def _is_power_of_two(value: int) -> bool:
    return value > 0 and value & (value - 1) == 0


def _wrap(value):
    if isinstance(value, Fraction) and _is_power_of_two(value.denominator):
        return Fraction.__new__(Dyadic, value.numerator, value.denominator)
    return value


class Dyadic(Fraction):
    """
    Exact rational with a power-of-two denominator.

    Parameters
    ----------
    numerator : int, Fraction or str
        Integer numerator, an existing rational with a power-of-two
        denominator, or canonical text ``"n/2^k"``.
    exponent : int, default 0
        Power of two in the denominator when ``numerator`` is an int.

    Examples
    --------
    >>> Dyadic(3, 2)
    Dyadic('3/2^2')
    >>> Dyadic(1, 1) + Dyadic(1, 2)
    Dyadic('3/2^2')
    """

    __slots__ = ()

    def __new__(cls, numerator=0, exponent=0):
        if isinstance(numerator, str):
            value = parse_scalar(numerator)
            if not isinstance(value, Dyadic):
                raise SystemParseError(f"'{numerator}' is not a dyadic rational")
            return value
        if isinstance(numerator, Fraction):
            if exponent:
                numerator = numerator / (1 << exponent)
            if not _is_power_of_two(numerator.denominator):
                raise ValueError(f"{numerator} is not a dyadic rational")
            return Fraction.__new__(cls, numerator.numerator, numerator.denominator)
        if exponent < 0:
            raise ValueError("exponent must be non-negative")
        return Fraction.__new__(cls, int(numerator), 1 << exponent)

    @property
    def exponent(self) -> int:
        """Power of two in the canonical denominator"""
        return self.denominator.bit_length() - 1

    def __reduce__(self):
        return (Dyadic, (self.numerator, self.exponent))

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __repr__(self):
        return f"Dyadic('{self}')"

    def __str__(self):
        return f"{self.numerator}/2^{self.exponent}"

    def __add__(self, other):
        return _wrap(Fraction.__add__(self, other))

    def __radd__(self, other):
        return _wrap(Fraction.__radd__(self, other))

    def __sub__(self, other):
        return _wrap(Fraction.__sub__(self, other))

    def __rsub__(self, other):
        return _wrap(Fraction.__rsub__(self, other))

    def __mul__(self, other):
        return _wrap(Fraction.__mul__(self, other))

    def __rmul__(self, other):
        return _wrap(Fraction.__rmul__(self, other))

    def __truediv__(self, other):
        return _wrap(Fraction.__truediv__(self, other))

    def __rtruediv__(self, other):
        return _wrap(Fraction.__rtruediv__(self, other))

    def __neg__(self):
        return Fraction.__new__(Dyadic, -self.numerator, self.denominator)

    def __pos__(self):
        return self

    def __abs__(self):
        return Fraction.__new__(Dyadic, abs(self.numerator), self.denominator)


def as_exact(value: Scalar) -> Fraction:
    """
    Normalize an exact scalar, promoting it to ``Dyadic`` when possible.

    Raises
    ------
    TypeError
        If ``value`` is a float or another inexact type.
    """
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise TypeError(f"exact scalar required, got {type(value).__name__}")
    if isinstance(value, int):
        return Dyadic(value)
    return _wrap(value)


def is_dyadic(value: Scalar) -> bool:
    return isinstance(value, int) or _is_power_of_two(Fraction(value).denominator)


def parse_scalar(text: str) -> Fraction:
    """
    Parse canonical scalar text.

    Parameters
    ----------
    text : str
        ``n/2^k`` for dyadic values or ``n/d`` for other rationals.

    Returns
    -------
    Fraction
        A ``Dyadic`` for dyadic input, a plain ``Fraction`` otherwise.

    Raises
    ------
    SystemParseError
        If the text is malformed or not in canonical form; the message
        names the canonical spelling when one exists.
    """
    text = text.strip()
    match = _DYADIC_RE.match(text)
    if match:
        sign, digits, exp = match.groups()
        numerator = int(digits)
        exponent = int(exp)
        value = Dyadic(-numerator if sign else numerator, exponent)
        if (exponent > 0 and numerator % 2 == 0) or (sign and numerator == 0):
            raise SystemParseError(
                f"non-canonical dyadic '{text}': write it as '{format_scalar(value)}'"
            )
        return value
    match = _RATIONAL_RE.match(text)
    if match:
        sign, digits, den = match.groups()
        numerator = int(digits)
        denominator = int(den)
        value = as_exact(Fraction(-numerator if sign else numerator, denominator))
        if (
            _is_power_of_two(denominator)
            or value.denominator != denominator
            or (sign and numerator == 0)
        ):
            raise SystemParseError(
                f"non-canonical scalar '{text}': write it as '{format_scalar(value)}'"
            )
        return value
    raise SystemParseError(
        f"malformed scalar '{text}': expected 'n/2^k' (or 'n/d' for "
        f"non-dyadic rationals)"
    )


def format_scalar(value: Scalar) -> str:
    """Canonical text for an exact scalar"""
    value = as_exact(value)
    if isinstance(value, Dyadic):
        return str(value)
    return f"{value.numerator}/{value.denominator}"
