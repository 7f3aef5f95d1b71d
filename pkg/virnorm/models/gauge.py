"""Tuples of Young diagrams and the gauge-theory parameter dictionary."""
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Any, Iterator, Tuple

from sympy import QQ

from ..algebra.ratfunc import ratfunc_field
from ..core.exceptions import ValidationError
from .partition import Partition, conjugate, enumerate_partitions


class ParameterMode(str, Enum):
    GENERIC = "generic"
    VIRASORO = "virasoro"


@dataclass(frozen=True)
class TuplePartition:
    components: Tuple[Partition, ...]

    @property
    def rank(self) -> int:
        return len(self.components)

    @property
    def total(self) -> int:
        return sum(c.size for c in self.components)

    def transpose(self) -> "TuplePartition":
        return TuplePartition(tuple(conjugate(c) for c in self.components))

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def enumerate_tuple_partitions(n: int, rank: int) -> Iterator[TuplePartition]:
    """All rank-tuples of partitions with total size n, in a fixed order."""
    for sizes in _compositions(n, rank):
        for components in product(*(enumerate_partitions(k) for k in sizes)):
            yield TuplePartition(tuple(components))


def _compositions(n: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class GaugeParams:
    """Equivariant parameters (eps1, eps2) and Coulomb moduli a_1..a_r.

    Values are sympy field elements in generic mode, or rationals / quadratic
    surds when evaluating at a sample point.
    """

    rank: int
    mode: ParameterMode
    eps1: Any
    eps2: Any
    a: Tuple[Any, ...]

    def __post_init__(self) -> None:
        if self.rank < 1 or len(self.a) != self.rank:
            raise ValidationError(f"Expected {self.rank} Coulomb parameters, got {len(self.a)}")

    @classmethod
    def generic(cls, rank: int = 2) -> "GaugeParams":
        """Independent symbols e1, e2, a1..ar."""
        names = ("e1", "e2") + tuple(f"a{i}" for i in range(1, rank + 1))
        _, gens = ratfunc_field(names)
        return cls(rank, ParameterMode.GENERIC, gens[0], gens[1], tuple(gens[2:]))

    @classmethod
    def su2_generic(cls) -> "GaugeParams":
        """SU(2) with a_1 = -a/2, a_2 = a/2 in the field QQ(e1, e2, a)."""
        _, (e1, e2, a) = ratfunc_field(("e1", "e2", "a"))
        return cls(2, ParameterMode.GENERIC, e1, e2, (-a / 2, a / 2))

    @classmethod
    def virasoro(cls, t: Any, a: Any) -> "GaugeParams":
        """eps2 = 1, eps1 = -t, a_2 = -a_1 = a/2; c(t) = 13 + 6(eps1/eps2 + eps2/eps1)."""
        half = QQ(1, 2)
        return cls(2, ParameterMode.VIRASORO, -t, t**0, (-(a * half), a * half))

    @property
    def one(self) -> Any:
        """Unit of the ring the Coulomb moduli live in."""
        return self.a[0] ** 0

    def swapped(self) -> "GaugeParams":
        return GaugeParams(self.rank, self.mode, self.eps2, self.eps1, self.a)

    def scaled(self, factor: Any) -> "GaugeParams":
        return GaugeParams(
            self.rank,
            self.mode,
            self.eps1 * factor,
            self.eps2 * factor,
            tuple(x * factor for x in self.a),
        )

    def negated_a(self) -> "GaugeParams":
        return GaugeParams(self.rank, self.mode, self.eps1, self.eps2, tuple(-x for x in self.a))
