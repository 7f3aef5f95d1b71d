"""Exact rationals.

BigRat values are elements of sympy's ``QQ`` domain: arbitrary precision,
always in lowest terms with a positive denominator.
"""
import re
from math import isqrt
from typing import Any, Optional, Union

from sympy import QQ

from ..core.exceptions import ValidationError

BigRat = Any  # element of QQ (PythonMPQ or gmpy2.mpq)
RatLike = Union[int, str, BigRat]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def to_rat(value: RatLike) -> BigRat:
    """Coerce ints, ``"p/q"`` strings and rational-like objects into QQ."""
    if isinstance(value, bool):
        raise ValidationError(f"Not a rational number: {value!r}")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, str):
        return parse_rat(value)
    numerator = getattr(value, "numerator", None)
    denominator = getattr(value, "denominator", None)
    if numerator is None or denominator is None:
        raise ValidationError(f"Not a rational number: {value!r}")
    return QQ(int(numerator), int(denominator))


def parse_rat(text: str) -> BigRat:
    match = _RATIONAL_RE.match(text)
    if not match:
        raise ValidationError(f"Malformed rational: {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) else 1
    if den == 0:
        raise ValidationError(f"Zero denominator in rational: {text!r}")
    return QQ(num, den)


def format_rat(value: BigRat) -> str:
    value = to_rat(value)
    if value.denominator == 1:
        return str(int(value.numerator))
    return f"{int(value.numerator)}/{int(value.denominator)}"


def rational_sqrt(value: BigRat) -> Optional[BigRat]:
    """Exact square root when ``value`` is the square of a rational, else None."""
    value = to_rat(value)
    if value < 0:
        return None
    num, den = int(value.numerator), int(value.denominator)
    root_num, root_den = isqrt(num), isqrt(den)
    if root_num * root_num == num and root_den * root_den == den:
        return QQ(root_num, root_den)
    return None
