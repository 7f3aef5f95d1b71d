"""Quadratic extensions: Laurent polynomials adjoined with sqrt(2), and QQ(sqrt(d))."""
from typing import Union

from sympy import QQ

from ..core.exceptions import DivisionByZeroError, InvariantViolation, ValidationError
from .laurent import LaurentPoly
from .rational import BigRat, RatLike, format_rat, rational_sqrt, to_rat


class Sqrt2Ext:
    """``rational_part + sqrt(2) * radical_part`` with Laurent polynomial parts."""

    __slots__ = ("rational_part", "radical_part")

    def __init__(
        self,
        rational_part: Union[LaurentPoly, RatLike, None] = None,
        radical_part: Union[LaurentPoly, RatLike, None] = None,
    ):
        self.rational_part = LaurentPoly.coerce(0 if rational_part is None else rational_part)
        self.radical_part = LaurentPoly.coerce(0 if radical_part is None else radical_part)

    @classmethod
    def coerce(cls, value) -> "Sqrt2Ext":
        if isinstance(value, Sqrt2Ext):
            return value
        return cls(LaurentPoly.coerce(value))

    @classmethod
    def inv_sqrt2(cls) -> "Sqrt2Ext":
        """1/sqrt(2) = sqrt(2)/2."""
        return cls(0, QQ(1, 2))

    def is_zero(self) -> bool:
        return self.rational_part.is_zero() and self.radical_part.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        """True when the sqrt(2) component vanishes."""
        return self.radical_part.is_zero()

    def __add__(self, other) -> "Sqrt2Ext":
        try:
            other = Sqrt2Ext.coerce(other)
        except ValidationError:
            return NotImplemented
        return Sqrt2Ext(
            self.rational_part + other.rational_part,
            self.radical_part + other.radical_part,
        )

    __radd__ = __add__

    def __neg__(self) -> "Sqrt2Ext":
        return Sqrt2Ext(-self.rational_part, -self.radical_part)

    def __sub__(self, other) -> "Sqrt2Ext":
        return self + (-Sqrt2Ext.coerce(other))

    def __rsub__(self, other) -> "Sqrt2Ext":
        return Sqrt2Ext.coerce(other) - self

    def __mul__(self, other) -> "Sqrt2Ext":
        try:
            other = Sqrt2Ext.coerce(other)
        except ValidationError:
            return NotImplemented
        a, b = self.rational_part, self.radical_part
        c, d = other.rational_part, other.radical_part
        return Sqrt2Ext(a * c + (b * d).scale(2), a * d + b * c)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Sqrt2Ext":
        if exponent < 0:
            raise ValidationError("Negative powers are not supported in Sqrt2Ext")
        result = Sqrt2Ext(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        try:
            other = Sqrt2Ext.coerce(other)
        except ValidationError:
            return NotImplemented
        return (
            self.rational_part == other.rational_part
            and self.radical_part == other.radical_part
        )

    def __hash__(self) -> int:
        return hash((self.rational_part, self.radical_part))

    def substitute_inverse(self) -> "Sqrt2Ext":
        return Sqrt2Ext(
            self.rational_part.substitute_inverse(),
            self.radical_part.substitute_inverse(),
        )

    def to_text(self) -> str:
        if self.radical_part.is_zero():
            return self.rational_part.to_text()
        radical = f"sqrt(2)*({self.radical_part.to_text()})"
        if self.rational_part.is_zero():
            return radical
        return f"{self.rational_part.to_text()} + {radical}"

    def to_latex(self) -> str:
        if self.radical_part.is_zero():
            return self.rational_part.to_latex()
        radical = f"\\sqrt{{2}}\\left({self.radical_part.to_latex()}\\right)"
        if self.rational_part.is_zero():
            return radical
        return f"{self.rational_part.to_latex()} + {radical}"

    def to_json(self) -> dict:
        return {
            "rational": self.rational_part.to_json(),
            "radical": self.radical_part.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Sqrt2Ext":
        return cls(
            LaurentPoly.from_json(data["rational"]),
            LaurentPoly.from_json(data["radical"]),
        )

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Sqrt2Ext({self.to_text()!r})"


class QuadraticSurd:
    """Element ``x + y*sqrt(d)`` of QQ(sqrt(d)) for a fixed rational non-square d."""

    __slots__ = ("x", "y", "d")

    def __init__(self, x: RatLike, y: RatLike, d: RatLike):
        self.x = to_rat(x)
        self.y = to_rat(y)
        self.d = to_rat(d)

    @classmethod
    def sqrt(cls, d: RatLike) -> "QuadraticSurd":
        d = to_rat(d)
        if rational_sqrt(d) is not None:
            raise ValidationError(
                f"{format_rat(d)} is a rational square; use the rational root instead"
            )
        return cls(0, 1, d)

    def _coerce(self, other) -> "QuadraticSurd":
        if isinstance(other, QuadraticSurd):
            if other.d != self.d:
                raise ValidationError("Mixing surds with different radicands")
            return other
        return QuadraticSurd(other, 0, self.d)

    def is_zero(self) -> bool:
        return not self.x and not self.y

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other) -> "QuadraticSurd":
        other = self._coerce(other)
        return QuadraticSurd(self.x + other.x, self.y + other.y, self.d)

    __radd__ = __add__

    def __neg__(self) -> "QuadraticSurd":
        return QuadraticSurd(-self.x, -self.y, self.d)

    def __sub__(self, other) -> "QuadraticSurd":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "QuadraticSurd":
        return self._coerce(other) - self

    def __mul__(self, other) -> "QuadraticSurd":
        other = self._coerce(other)
        return QuadraticSurd(
            self.x * other.x + self.d * self.y * other.y,
            self.x * other.y + self.y * other.x,
            self.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticSurd":
        norm = self.x * self.x - self.d * self.y * self.y
        if not norm:
            raise DivisionByZeroError("inverting zero in a quadratic field")
        return QuadraticSurd(self.x / norm, -self.y / norm, self.d)

    def __truediv__(self, other) -> "QuadraticSurd":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "QuadraticSurd":
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "QuadraticSurd":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = QuadraticSurd(1, 0, self.d)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadraticSurd):
            return (self.x, self.y, self.d) == (other.x, other.y, other.d)
        try:
            return not self.y and self.x == to_rat(other)
        except ValidationError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.x, self.y, self.d))

    def rational_value(self) -> BigRat:
        """The value as a rational; the sqrt(d) component must have cancelled."""
        if self.y:
            raise InvariantViolation(
                f"Expected a rational value, got {self}", invariant="radical-cancelled"
            )
        return self.x

    def __str__(self) -> str:
        return f"{format_rat(self.x)} + {format_rat(self.y)}*sqrt({format_rat(self.d)})"

    def __repr__(self) -> str:
        return f"QuadraticSurd({self})"
