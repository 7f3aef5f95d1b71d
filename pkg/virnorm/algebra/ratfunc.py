"""Reduced multivariate rational functions over QQ.

RatFunc values are elements of a sympy ``FracField``; sympy cancels the gcd of
numerator and denominator after every operation and keeps the denominator's
leading coefficient positive.
"""
import re
from functools import lru_cache
from typing import Any, Dict, Mapping, Tuple

from sympy import QQ, gcd
from sympy.polys.fields import field

from ..core.exceptions import (
    DivisionByZeroError,
    InvariantViolation,
    PoleCollisionError,
    ValidationError,
)
from .laurent import LaurentPoly

RatFunc = Any  # sympy FracElement

_RATIONAL_TYPE = type(QQ(1))
_ALLOWED_NAME = re.compile(r"^(t|h|a|e1|e2|a\d+)$")


@lru_cache(maxsize=None)
def ratfunc_field(names: Tuple[str, ...]):
    """The rational function field QQ(names); cached so equal names share a field."""
    for name in names:
        if not _ALLOWED_NAME.match(name):
            raise ValidationError(f"Unsupported rational function variable: {name!r}")
    if len(set(names)) != len(names):
        raise ValidationError(f"Repeated variable in {names!r}")
    result = field(",".join(names), QQ)
    return result[0], tuple(result[1:])


def ratfunc_arith(lhs: RatFunc, rhs: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        if not rhs:
            raise DivisionByZeroError("rational function division by zero")
        return lhs / rhs
    raise ValidationError(f"Unknown rational function operation: {op!r}")


def is_reduced(value: RatFunc) -> bool:
    """Independent gcd check through sympy's expression-level gcd."""
    common = gcd(value.numer.as_expr(), value.denom.as_expr())
    return bool(common.is_number)


def _evaluate_poly(poly, point: Mapping[str, Any], symbols) -> Any:
    names = [str(s) for s in symbols]
    values = [point[name] for name in names]
    # every term carries the point's type; QQ coefficients stay on the right
    unit = next(
        (v**0 for v in values if not isinstance(v, (int, _RATIONAL_TYPE))), QQ(1)
    )
    total: Any = unit * 0
    for monom, coeff in poly.terms():
        term: Any = unit
        for value, exponent in zip(values, monom):
            if exponent:
                term = term * value**exponent
        total = total + term * coeff
    return total


def evaluate_ratfunc(value: RatFunc, point: Mapping[str, Any]) -> Any:
    """Exact value at a point; the point may hold rationals or quadratic surds."""
    symbols = value.field.symbols
    missing = [str(s) for s in symbols if str(s) not in point]
    if missing:
        raise ValidationError(f"Missing values for variables: {missing}")
    denominator = _evaluate_poly(value.denom, point, symbols)
    if not denominator:
        raise PoleCollisionError(offender=str(value.denom.as_expr()))
    numerator = _evaluate_poly(value.numer, point, symbols)
    return numerator / denominator


def laurent_to_ratfunc(value: LaurentPoly, variable) -> RatFunc:
    """Embed an even Laurent polynomial as a rational function of ``variable`` = t."""
    total = variable * 0
    for exponent, coeff in value.t_terms():
        total += coeff * variable**exponent
    return total


def ratfunc_to_laurent(value: RatFunc, name: str = "t") -> LaurentPoly:
    """Read a rational function in t with monomial denominator as a LaurentPoly."""
    symbols = [str(s) for s in value.field.symbols]
    index = symbols.index(name)
    denominator = value.denom
    if len(denominator.terms()) != 1:
        raise InvariantViolation(
            f"Denominator {denominator.as_expr()} is not a monomial",
            invariant="laurent-denominator",
        )
    (den_monom, den_coeff), = denominator.terms()
    terms: Dict[int, Any] = {}
    for monom, coeff in value.numer.terms():
        if any(e for i, e in enumerate(monom) if i != index) or any(
            e for i, e in enumerate(den_monom) if i != index
        ):
            raise InvariantViolation(
                f"{value.as_expr()} depends on more than {name}",
                invariant="laurent-single-variable",
            )
        exponent = monom[index] - den_monom[index]
        terms[exponent] = terms.get(exponent, QQ(0)) + coeff / den_coeff
    return LaurentPoly.from_t_terms(terms)


def ratfunc_text(value: RatFunc) -> str:
    return str(value.as_expr())
