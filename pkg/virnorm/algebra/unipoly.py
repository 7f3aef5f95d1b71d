"""Dense univariate polynomials over the Laurent and sqrt(2)-extended rings.

HPoly carries polynomials in h with LaurentPoly coefficients (Shapovalov
entries, norms of logarithmic primaries); AlphaPoly carries polynomials in the
Heisenberg zero mode alpha with Sqrt2Ext coefficients.
"""
from typing import Callable, Iterable, List, Tuple, Type, TypeVar

from ..core.exceptions import InvariantViolation
from .laurent import LaurentPoly
from .quadratic import Sqrt2Ext

P = TypeVar("P", bound="UniPoly")


class UniPoly:
    """Coefficient list, lowest degree first, with no trailing zeros."""

    variable = "x"
    coefficient_type: Type = LaurentPoly

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        coerce = self.coefficient_type.coerce
        values = [coerce(c) for c in coeffs]
        while values and values[-1].is_zero():
            values.pop()
        self.coeffs: Tuple = tuple(values)

    @classmethod
    def constant(cls: Type[P], value) -> P:
        return cls([value])

    @classmethod
    def gen(cls: Type[P]) -> P:
        """The variable itself."""
        return cls([0, 1])

    @classmethod
    def linear(cls: Type[P], root) -> P:
        """The monic factor ``x - root``."""
        return cls([-cls.coefficient_type.coerce(root), 1])

    @classmethod
    def from_dict(cls: Type[P], coeffs: dict) -> P:
        if not coeffs:
            return cls()
        top = max(coeffs)
        zero = cls.coefficient_type.coerce(0)
        return cls([coeffs.get(k, zero) for k in range(top + 1)])

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def degree(self) -> int:
        """Degree in the variable; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coefficient(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.coefficient_type.coerce(0)

    def items(self) -> List[Tuple[int, object]]:
        return [(k, c) for k, c in enumerate(self.coeffs) if not c.is_zero()]

    def _coerce(self: P, other) -> P:
        if isinstance(other, type(self)):
            return other
        return type(self).constant(other)

    def __add__(self: P, other) -> P:
        other = self._coerce(other)
        longer, shorter = (
            (self.coeffs, other.coeffs)
            if len(self.coeffs) >= len(other.coeffs)
            else (other.coeffs, self.coeffs)
        )
        merged = list(longer)
        for k, c in enumerate(shorter):
            merged[k] = merged[k] + c
        return type(self)(merged)

    __radd__ = __add__

    def __neg__(self: P) -> P:
        return type(self)([-c for c in self.coeffs])

    def __sub__(self: P, other) -> P:
        return self + (-self._coerce(other))

    def __rsub__(self: P, other) -> P:
        return self._coerce(other) - self

    def __mul__(self: P, other) -> P:
        if not isinstance(other, UniPoly):
            factor = self.coefficient_type.coerce(other)
            return type(self)([c * factor for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return type(self)()
        zero = self.coefficient_type.coerce(0)
        product = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    product[i + j] = product[i + j] + a * b
        return type(self)(product)

    __rmul__ = __mul__

    def __pow__(self: P, exponent: int) -> P:
        result = type(self).constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return type(self) is type(other) and self.coeffs == other.coeffs
        try:
            return self == self._coerce(other)
        except Exception:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.coeffs))

    def evaluate(self, point):
        """Horner evaluation at a coefficient-ring value."""
        point = self.coefficient_type.coerce(point)
        total = self.coefficient_type.coerce(0)
        for c in reversed(self.coeffs):
            total = total * point + c
        return total

    def compose_linear(self: P, center) -> P:
        """``q`` with ``q(x) = p(center + x)``, by Horner's scheme."""
        shifted = type(self)()
        step = type(self)([center, 1])
        for c in reversed(self.coeffs):
            shifted = shifted * step + type(self).constant(c)
        return shifted

    def divide_linear(self: P, root) -> Tuple[P, object]:
        """Synthetic division by ``x - root``: returns (quotient, remainder)."""
        root = self.coefficient_type.coerce(root)
        if self.is_zero():
            return type(self)(), self.coefficient_type.coerce(0)
        carry = self.coefficient_type.coerce(0)
        quotient: List = []
        for c in reversed(self.coeffs):
            carry = carry * root + c
            quotient.append(carry)
        remainder = quotient.pop()
        return type(self)(reversed(quotient)), remainder

    def exact_divide_linear(self: P, root) -> P:
        quotient, remainder = self.divide_linear(root)
        if not remainder.is_zero():
            raise InvariantViolation(
                f"{self.variable} - ({root}) does not divide {self.to_text()}",
                invariant="exact-linear-division",
            )
        return quotient

    def map_coefficients(self: P, fn: Callable) -> P:
        return type(self)([fn(c) for c in self.coeffs])

    def to_text(self) -> str:
        if self.is_zero():
            return "0"
        pieces = []
        for k, c in reversed(self.items()):
            text = c.to_text()
            if k == 0:
                pieces.append(f"({text})" if " " in text else text)
                continue
            power = self.variable if k == 1 else f"{self.variable}^{k}"
            if text == "1":
                pieces.append(power)
            else:
                pieces.append(f"({text})*{power}" if " " in text else f"{text}*{power}")
        return " + ".join(pieces)

    def to_latex(self) -> str:
        if self.is_zero():
            return "0"
        pieces = []
        for k, c in reversed(self.items()):
            text = c.to_latex()
            wrapped = f"\\left({text}\\right)" if " " in text else text
            if k == 0:
                pieces.append(wrapped)
            else:
                power = self.latex_variable if k == 1 else f"{self.latex_variable}^{{{k}}}"
                pieces.append(power if text == "1" else f"{wrapped} {power}")
        return " + ".join(pieces)

    latex_variable = "x"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_text()!r})"


class HPoly(UniPoly):
    """Polynomial in h with LaurentPoly coefficients."""

    variable = "h"
    latex_variable = "h"
    coefficient_type = LaurentPoly
    __slots__ = ()

    def is_even(self) -> bool:
        return all(c.is_even() for c in self.coeffs)

    def substitute_inverse(self) -> "HPoly":
        return self.map_coefficients(lambda c: c.substitute_inverse())

    def evaluate_at(self, t0, h0):
        """Exact rational value at ``(t, h) = (t0, h0)``."""
        total = 0
        for c in reversed(self.coeffs):
            total = total * h0 + c.evaluate(t0)
        return total

    def to_json(self) -> List[list]:
        return [[k, c.to_json()] for k, c in self.items()]

    @classmethod
    def from_json(cls, data: Iterable) -> "HPoly":
        return cls.from_dict({int(k): LaurentPoly.from_json(c) for k, c in data})


class AlphaPoly(UniPoly):
    """Polynomial in alpha with Sqrt2Ext coefficients."""

    variable = "alpha"
    latex_variable = "\\alpha"
    coefficient_type = Sqrt2Ext
    __slots__ = ()

    def is_constant(self) -> bool:
        return self.degree() <= 0

    def constant_term(self) -> Sqrt2Ext:
        return self.coefficient(0)

    @classmethod
    def from_laurent(cls, value: LaurentPoly) -> "AlphaPoly":
        return cls.constant(Sqrt2Ext(value))


def hpoly_shift(p: HPoly, center: LaurentPoly) -> HPoly:
    """Re-expand ``p`` in powers of ``delta = h - center``."""
    return p.compose_linear(center)

