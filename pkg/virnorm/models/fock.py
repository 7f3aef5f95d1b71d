"""Fock space vectors a_{-lambda}|alpha> and Feigin-Fuchs weights."""
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Tuple

from ..algebra.quadratic import Sqrt2Ext
from ..algebra.unipoly import AlphaPoly
from ..core.exceptions import SpecializationError, ValidationError
from .partition import Partition, enumerate_partitions
from .verma import render_combination


@dataclass(frozen=True)
class FockVector:
    level: int
    terms: Mapping[Partition, AlphaPoly] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for partition, coeff in self.terms.items():
            if partition.size != self.level:
                raise ValidationError(
                    f"Partition {partition} does not lie at level {self.level}"
                )
            if coeff.is_zero():
                raise ValidationError(f"Zero coefficient stored for {partition}")

    @classmethod
    def vacuum(cls) -> "FockVector":
        return cls(0, {Partition(): AlphaPoly.constant(1)})

    @classmethod
    def from_terms(cls, level: int, terms: Mapping[Partition, AlphaPoly]) -> "FockVector":
        return cls(level, {p: c for p, c in terms.items() if not c.is_zero()})

    def coefficient(self, partition: Partition) -> AlphaPoly:
        return self.terms.get(partition, AlphaPoly())

    def is_zero(self) -> bool:
        return not self.terms

    def is_specialized(self) -> bool:
        return all(c.is_constant() for c in self.terms.values())

    def __add__(self, other: "FockVector") -> "FockVector":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.level != self.level:
            raise ValidationError("Adding Fock vectors of different levels")
        merged: Dict[Partition, AlphaPoly] = dict(self.terms)
        for partition, coeff in other.terms.items():
            merged[partition] = merged.get(partition, AlphaPoly()) + coeff
        return FockVector.from_terms(self.level, merged)

    def scale(self, factor) -> "FockVector":
        return FockVector.from_terms(
            self.level, {p: c * factor for p, c in self.terms.items()}
        )

    def specialize(self, alpha0: Sqrt2Ext) -> "FockVector":
        """Substitute a value for alpha; the result has constant coefficients."""
        return FockVector.from_terms(
            self.level,
            {p: AlphaPoly.constant(c.evaluate(alpha0)) for p, c in self.terms.items()},
        )

    def constant_terms(self) -> Dict[Partition, Sqrt2Ext]:
        if not self.is_specialized():
            raise SpecializationError()
        return {p: c.constant_term() for p, c in self.terms.items()}

    def ordered_items(self) -> List[Tuple[Partition, AlphaPoly]]:
        order = tuple(reversed(enumerate_partitions(self.level)))
        return [(p, self.terms[p]) for p in order if p in self.terms]

    def to_text(self) -> str:
        return render_combination(
            (p.to_latex_word("a") if p else "1", c) for p, c in self.ordered_items()
        )


@dataclass(frozen=True)
class FFWeights:
    """Heisenberg weights at which the Feigin-Fuchs module carries P_{r,s}."""

    r: int
    s: int
    rho: Sqrt2Ext
    alpha_rs: Sqrt2Ext
    alpha_dual: Sqrt2Ext
    eps: AlphaPoly
    eps_dagger: AlphaPoly
