"""Sparse Laurent polynomials in u = t^{1/2} over QQ.

A value is stored as ``u**shift * poly`` with ``poly`` an element of sympy's
``QQ[u]`` not divisible by u. Exponents reported by :meth:`LaurentPoly.terms`
are powers of u, so ``t**k`` has exponent ``2k``.
"""
import re
from typing import Dict, Iterable, List, Mapping, Tuple

from sympy import QQ
from sympy.polys.rings import ring

from ..core.exceptions import (
    DivisionByZeroError,
    InvariantViolation,
    UndefinedDegreeError,
    ValidationError,
)
from .rational import BigRat, RatLike, format_rat, parse_rat, rational_sqrt, to_rat

U_RING, U = ring("u", QQ)

_SPLIT_RE = re.compile(r"\s+([+-])\s+")
_TERM_RE = re.compile(
    r"^(?P<coef>\d+(?:/\d+)?)?\s*\*?\s*"
    r"(?P<mono>t(?:\^(?:\{(?P<half>-?\d+)/2\}|\{(?P<braced>-?\d+)\}|(?P<exp>-?\d+)))?)?$"
)


class LaurentPoly:
    """Immutable Laurent polynomial in u with exact rational coefficients."""

    __slots__ = ("_poly", "_shift")

    def __init__(self, poly=None, shift: int = 0):
        if poly is None:
            poly = U_RING.zero
        if not poly:
            self._poly = U_RING.zero
            self._shift = 0
            return
        low = min(monom[0] for monom in poly.keys())
        if low:
            poly = U_RING.from_dict({(m[0] - low,): c for m, c in poly.items()})
        self._poly = poly
        self._shift = shift + low

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_terms(cls, terms: Mapping[int, RatLike]) -> "LaurentPoly":
        """Build from ``{u_exponent: coefficient}``."""
        items = {k: to_rat(c) for k, c in terms.items()}
        items = {k: c for k, c in items.items() if c}
        if not items:
            return cls()
        low = min(items)
        return cls(U_RING.from_dict({(k - low,): c for k, c in items.items()}), low)

    @classmethod
    def from_t_terms(cls, terms: Mapping[int, RatLike]) -> "LaurentPoly":
        """Build from ``{t_exponent: coefficient}``."""
        return cls.from_terms({2 * k: c for k, c in terms.items()})

    @classmethod
    def constant(cls, value: RatLike) -> "LaurentPoly":
        return cls.from_terms({0: value})

    @classmethod
    def monomial(cls, coeff: RatLike, u_exponent: int) -> "LaurentPoly":
        return cls.from_terms({u_exponent: coeff})

    @classmethod
    def t(cls, exponent: int = 1) -> "LaurentPoly":
        return cls.from_terms({2 * exponent: 1})

    @classmethod
    def u(cls, exponent: int = 1) -> "LaurentPoly":
        return cls.from_terms({exponent: 1})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls.constant(1)

    @staticmethod
    def coerce(value) -> "LaurentPoly":
        if isinstance(value, LaurentPoly):
            return value
        return LaurentPoly.constant(value)

    # -- inspection -----------------------------------------------------------

    @property
    def poly(self):
        """The ``QQ[u]`` factor of ``u**shift * poly``."""
        return self._poly

    @property
    def shift(self) -> int:
        return self._shift

    def terms(self) -> List[Tuple[int, BigRat]]:
        """``(u_exponent, coefficient)`` pairs in descending exponent order."""
        return [(m[0] + self._shift, c) for m, c in self._poly.terms()]

    def t_terms(self) -> List[Tuple[int, BigRat]]:
        """``(t_exponent, coefficient)`` pairs; only defined on t-polynomials."""
        self.require_even()
        return [(e // 2, c) for e, c in self.terms()]

    def coefficient(self, u_exponent: int) -> BigRat:
        return self._poly.get((u_exponent - self._shift,), QQ(0))

    def t_coefficient(self, t_exponent: int) -> BigRat:
        return self.coefficient(2 * t_exponent)

    def is_zero(self) -> bool:
        return not self._poly

    def __bool__(self) -> bool:
        return bool(self._poly)

    def is_constant(self) -> bool:
        return self.is_zero() or (self._shift == 0 and self._poly.is_ground)

    def is_monomial(self) -> bool:
        return len(self._poly) == 1

    def is_even(self) -> bool:
        """True when every stored exponent is even, i.e. the value lies in QQ[t, 1/t]."""
        return all(e % 2 == 0 for e, _ in self.terms())

    def require_even(self) -> "LaurentPoly":
        if not self.is_even():
            raise InvariantViolation(
                f"Expected a Laurent polynomial in t, got {self.to_text()}",
                invariant="even-u-support",
            )
        return self

    def maxmin_deg(self) -> Tuple[int, int]:
        """Maximum and minimum degree, in units of t when the support is even."""
        if self.is_zero():
            raise UndefinedDegreeError()
        exponents = [e for e, _ in self.terms()]
        high, low = max(exponents), min(exponents)
        if self.is_even():
            return high // 2, low // 2
        return high, low

    # -- arithmetic -----------------------------------------------------------

    def _aligned(self, other: "LaurentPoly"):
        low = min(self._shift, other._shift)
        left = self._poly * U ** (self._shift - low)
        right = other._poly * U ** (other._shift - low)
        return left, right, low

    def __add__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.constant(other)
            except ValidationError:
                return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        left, right, low = self._aligned(other)
        return LaurentPoly(left + right, low)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self.coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self.coerce(other) - self

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(-self._poly, self._shift)

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.constant(other)
            except ValidationError:
                return NotImplemented
        return LaurentPoly(self._poly * other._poly, self._shift + other._shift)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentPoly":
        if exponent < 0:
            return self.inverse_monomial() ** (-exponent)
        return LaurentPoly(self._poly**exponent, self._shift * exponent)

    def scale(self, factor: RatLike) -> "LaurentPoly":
        return LaurentPoly(self._poly * to_rat(factor), self._shift)

    def inverse_monomial(self) -> "LaurentPoly":
        """Inverse of a nonzero monomial (the only units of the Laurent ring)."""
        if not self.is_monomial():
            raise DivisionByZeroError(
                f"{self.to_text()} is not invertible in the Laurent ring"
            )
        (exponent, coeff), = self.terms()
        return LaurentPoly.monomial(1 / coeff, -exponent)

    def exquo(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient; raises InvariantViolation when ``other`` does not divide."""
        other = self.coerce(other)
        if other.is_zero():
            raise DivisionByZeroError()
        quotient, remainder = divmod(self._poly, other._poly)
        if remainder:
            raise InvariantViolation(
                f"{other.to_text()} does not divide {self.to_text()}",
                invariant="exact-division",
            )
        return LaurentPoly(quotient, self._shift - other._shift)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.constant(other)
            except ValidationError:
                return NotImplemented
        return self._shift == other._shift and self._poly == other._poly

    def __hash__(self) -> int:
        return hash((self._shift, tuple(self.terms())))

    # -- substitutions --------------------------------------------------------

    def substitute_inverse(self) -> "LaurentPoly":
        """t -> 1/t (equivalently u -> 1/u)."""
        return LaurentPoly.from_terms({-e: c for e, c in self.terms()})

    def negate_t(self) -> "LaurentPoly":
        """t -> -t; defined on Laurent polynomials in t only."""
        return LaurentPoly.from_t_terms(
            {k: (-c if k % 2 else c) for k, c in self.t_terms()}
        )

    def evaluate_u(self, u0: RatLike) -> BigRat:
        u0 = to_rat(u0)
        if not u0 and self._shift < 0:
            raise DivisionByZeroError("evaluating a negative power at u = 0")
        total = QQ(0)
        for exponent, coeff in self.terms():
            total += coeff * u0**exponent
        return total

    def evaluate(self, t0: RatLike) -> BigRat:
        """Exact value at ``t = t0``; half powers need ``t0`` to be a rational square."""
        t0 = to_rat(t0)
        if self.is_even():
            if not t0 and self._shift < 0:
                raise DivisionByZeroError("evaluating a negative power at t = 0")
            total = QQ(0)
            for exponent, coeff in self.terms():
                total += coeff * t0 ** (exponent // 2)
            return total
        root = rational_sqrt(t0)
        if root is None:
            raise ValidationError(
                f"Cannot evaluate half powers of t at non-square t = {format_rat(t0)}"
            )
        return self.evaluate_u(root)

    # -- serialization --------------------------------------------------------

    def to_text(self) -> str:
        """Canonical text form, descending exponents, e.g. ``t^2 - 2 + t^-2``."""
        if self.is_zero():
            return "0"
        pieces: List[str] = []
        for index, (exponent, coeff) in enumerate(self.terms()):
            sign = "-" if coeff < 0 else "+"
            body = _term_text(abs(coeff), exponent)
            if index == 0:
                pieces.append(body if sign == "+" else f"-{body}")
            else:
                pieces.append(f"{sign} {body}")
        return " ".join(pieces)

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        text = text.strip()
        if text in ("", "0"):
            return cls()
        chunks = _SPLIT_RE.split(text)
        signed = [("+", chunks[0])] + list(zip(chunks[1::2], chunks[2::2]))
        terms: Dict[int, BigRat] = {}
        for sign, chunk in signed:
            chunk = chunk.strip()
            if chunk.startswith("-"):
                sign = "-" if sign == "+" else "+"
                chunk = chunk[1:].strip()
            exponent, coeff = _parse_term(chunk)
            if sign == "-":
                coeff = -coeff
            terms[exponent] = terms.get(exponent, QQ(0)) + coeff
        return cls.from_terms(terms)

    def to_json(self) -> List[list]:
        """``[[u_exponent, [num, den]], ...]`` in descending exponent order."""
        return [[e, [int(c.numerator), int(c.denominator)]] for e, c in self.terms()]

    @classmethod
    def from_json(cls, data: Iterable) -> "LaurentPoly":
        return cls.from_terms({int(e): QQ(int(n), int(d)) for e, (n, d) in data})

    def to_latex(self) -> str:
        if self.is_zero():
            return "0"
        pieces: List[str] = []
        for index, (exponent, coeff) in enumerate(self.terms()):
            sign = "-" if coeff < 0 else "+"
            body = _term_latex(abs(coeff), exponent)
            if index == 0:
                pieces.append(body if sign == "+" else f"-{body}")
            else:
                pieces.append(f"{sign} {body}")
        return " ".join(pieces)

    def needs_parentheses(self) -> bool:
        return len(self._poly) > 1

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r})"


def _monomial_text(exponent: int) -> str:
    if exponent == 0:
        return ""
    if exponent % 2:
        return f"t^{{{exponent}/2}}"
    power = exponent // 2
    return "t" if power == 1 else f"t^{power}"


def _term_text(magnitude: BigRat, exponent: int) -> str:
    monomial = _monomial_text(exponent)
    if not monomial:
        return format_rat(magnitude)
    if magnitude == 1:
        return monomial
    return f"{format_rat(magnitude)} {monomial}"


def _term_latex(magnitude: BigRat, exponent: int) -> str:
    if exponent == 0:
        monomial = ""
    elif exponent % 2:
        monomial = f"t^{{{exponent}/2}}"
    elif exponent == 2:
        monomial = "t"
    else:
        monomial = f"t^{{{exponent // 2}}}"
    if magnitude.denominator == 1:
        number = str(int(magnitude.numerator))
    else:
        number = f"\\frac{{{int(magnitude.numerator)}}}{{{int(magnitude.denominator)}}}"
    if not monomial:
        return number
    if magnitude == 1:
        return monomial
    return f"{number} {monomial}"


def _parse_term(chunk: str) -> Tuple[int, BigRat]:
    match = _TERM_RE.match(chunk)
    if not match or (match.group("coef") is None and match.group("mono") is None):
        raise ValidationError(f"Malformed Laurent term: {chunk!r}")
    coeff = parse_rat(match.group("coef")) if match.group("coef") else QQ(1)
    if match.group("mono") is None:
        return 0, coeff
    if match.group("half") is not None:
        return int(match.group("half")), coeff
    power = match.group("braced") or match.group("exp")
    return (2 * int(power) if power is not None else 2), coeff


def c_of_t() -> LaurentPoly:
    """Central charge c(t) = 13 - 6t - 6/t."""
    return LaurentPoly.from_t_terms({1: -6, 0: 13, -1: -6})


def h_rs(r: int, s: int) -> LaurentPoly:
    """Highest weight h_{r,s}(t) = ((r - s t)^2 - (t - 1)^2) / (4t)."""
    return LaurentPoly.from_t_terms(
        {1: QQ(s * s - 1, 4), 0: QQ(1 - r * s, 2), -1: QQ(r * r - 1, 4)}
    )


def laurent_product(factors: Iterable[LaurentPoly]) -> LaurentPoly:
    result = LaurentPoly.one()
    for factor in factors:
        result = result * factor
    return result

