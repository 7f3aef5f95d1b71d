"""Symmetric functions in the power-sum basis, and Jack polynomials."""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Tuple

from ..algebra.laurent import LaurentPoly
from ..core.exceptions import ValidationError
from .partition import Partition, enumerate_partitions
from .verma import render_combination


def _is_zero(value: Any) -> bool:
    is_zero = getattr(value, "is_zero", None)
    if callable(is_zero):
        return bool(is_zero())
    return not value


@dataclass(frozen=True)
class SymFunc:
    """Homogeneous symmetric function sum_lambda c_lambda p_lambda.

    Coefficients are Sqrt2Ext values for images of Fock vectors, or elements of
    the rational function field QQ(t) for Jack polynomials and transition rows.
    """

    degree: int
    terms: Mapping[Partition, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for partition in self.terms:
            if partition.size != self.degree:
                raise ValidationError(
                    f"Partition {partition} does not have degree {self.degree}"
                )

    @classmethod
    def from_terms(cls, degree: int, terms: Mapping[Partition, Any]) -> "SymFunc":
        return cls(degree, {p: c for p, c in terms.items() if not _is_zero(c)})

    @classmethod
    def power_sum(cls, partition: Partition, one: Any) -> "SymFunc":
        return cls(partition.size, {partition: one})

    def coefficient(self, partition: Partition, zero: Any = 0) -> Any:
        return self.terms.get(partition, zero)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SymFunc") -> "SymFunc":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.degree != self.degree:
            raise ValidationError("Adding symmetric functions of different degrees")
        merged: Dict[Partition, Any] = dict(self.terms)
        for partition, coeff in other.terms.items():
            merged[partition] = merged[partition] + coeff if partition in merged else coeff
        return SymFunc.from_terms(self.degree, merged)

    def __sub__(self, other: "SymFunc") -> "SymFunc":
        return self + other.scale(-1)

    def scale(self, factor: Any) -> "SymFunc":
        return SymFunc.from_terms(self.degree, {p: c * factor for p, c in self.terms.items()})

    def ordered_items(self) -> List[Tuple[Partition, Any]]:
        order = enumerate_partitions(self.degree)
        return [(p, self.terms[p]) for p in order if p in self.terms]

    def to_text(self) -> str:
        items = []
        for partition, coeff in self.ordered_items():
            basis = "p_" + str(partition) if partition else "1"
            if hasattr(coeff, "to_text"):
                items.append((basis, coeff))
            else:
                items.append((basis, _Printable(coeff)))
        return render_combination(items)


class _Printable:
    """Adapter giving sympy field elements the renderer's interface."""

    def __init__(self, value: Any):
        self.value = value

    def to_text(self) -> str:
        return str(self.value.as_expr()) if hasattr(self.value, "as_expr") else str(self.value)

    def to_latex(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class JackP:
    """Monic Jack polynomial: coefficients over QQ(t) in both bases."""

    partition: Partition
    monomial_coeffs: Mapping[Partition, Any]
    expansion: SymFunc

    def to_text(self) -> str:
        return self.expansion.to_text()


@dataclass(frozen=True)
class JackJ:
    """Integral Jack polynomial with polynomial power-sum coefficients."""

    partition: Partition
    coefficients: Mapping[Partition, LaurentPoly]

    def coefficient(self, partition: Partition) -> LaurentPoly:
        return self.coefficients.get(partition, LaurentPoly())

    def ordered_items(self) -> List[Tuple[Partition, LaurentPoly]]:
        order = enumerate_partitions(self.partition.size)
        return [(p, self.coefficients[p]) for p in order if p in self.coefficients]

    def to_text(self) -> str:
        return render_combination(
            ("p_" + str(p), c) for p, c in reversed(self.ordered_items())
        )
