"""Value types of the Verma module engine."""
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from ..algebra.laurent import LaurentPoly
from ..algebra.unipoly import HPoly
from ..core.exceptions import ValidationError
from .partition import Partition, enumerate_partitions


@dataclass(frozen=True)
class VirWord:
    """Operator product L_{n_1} L_{n_2} ... read left to right."""

    indices: Tuple[int, ...]

    def __post_init__(self) -> None:
        if any(not isinstance(n, int) or n == 0 for n in self.indices):
            raise ValidationError(f"Word indices must be nonzero integers: {self.indices}")

    @classmethod
    def parse(cls, text: str) -> "VirWord":
        """Read a comma separated index list such as ``"2,-2"``."""
        text = text.strip().strip("()")
        if not text:
            return cls(())
        try:
            return cls(tuple(int(piece) for piece in text.split(",")))
        except ValueError as exc:
            raise ValidationError(f"Malformed word: {text!r}") from exc

    @property
    def level(self) -> int:
        """Level of ``word|h>``; negative when the word lowers below the vacuum."""
        return -sum(self.indices)

    def __str__(self) -> str:
        if not self.indices:
            return "1"
        return " ".join(f"L_{{{n}}}" for n in self.indices)


def _coefficient_text(coeff, latex: bool) -> Tuple[str, str]:
    """Split a coefficient into a sign and a rendered magnitude."""
    render = (lambda c: c.to_latex()) if latex else (lambda c: c.to_text())
    if isinstance(coeff, LaurentPoly):
        negative = coeff.terms()[0][1] < 0
        magnitude = -coeff if negative else coeff
        text = render(magnitude)
        if magnitude.needs_parentheses():
            text = f"\\left({text}\\right)" if latex else f"({text})"
        return ("-" if negative else "+"), ("" if text == "1" else text)
    text = render(coeff)
    if text == "1":
        return "+", ""
    if text == "-1":
        return "-", ""
    if " " in text:
        text = f"\\left({text}\\right)" if latex else f"({text})"
    return "+", text


def render_combination(
    items: Iterable[Tuple[str, object]], latex: bool = False
) -> str:
    """Render ``sum coeff * basis`` with signs pulled out of Laurent coefficients."""
    pieces: List[str] = []
    for basis, coeff in items:
        sign, magnitude = _coefficient_text(coeff, latex)
        if basis == "1":
            body = magnitude or "1"
        else:
            body = f"{magnitude} {basis}" if magnitude else basis
        if not pieces:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f"{sign} {body}")
    return " ".join(pieces) if pieces else "0"


@dataclass(frozen=True)
class VermaVector:
    """Combination of PBW monomials L_{-lambda}|c(t), h> with HPoly coefficients."""

    level: int
    terms: Mapping[Partition, HPoly] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for partition in self.terms:
            if partition.size != self.level:
                raise ValidationError(
                    f"Partition {partition} does not lie at level {self.level}"
                )

    def coefficient(self, partition: Partition) -> HPoly:
        return self.terms.get(partition, HPoly())

    def is_zero(self) -> bool:
        return not self.terms

    def ordered_items(self) -> List[Tuple[Partition, HPoly]]:
        return [(p, self.terms[p]) for p in enumerate_partitions(self.level) if p in self.terms]

    def to_text(self) -> str:
        items = []
        for partition, coeff in self.ordered_items():
            basis = partition.to_latex_word() if partition else "1"
            items.append((basis, coeff))
        return render_combination(items)


@dataclass(frozen=True)
class KacMatrix:
    """Gram matrix of the contravariant form at one level."""

    level: int
    partitions: Tuple[Partition, ...]
    entries: Tuple[Tuple[HPoly, ...], ...]

    def entry(self, lam: Partition, mu: Partition) -> HPoly:
        return self.entries[self.partitions.index(lam)][self.partitions.index(mu)]

    @property
    def size(self) -> int:
        return len(self.partitions)

    def is_symmetric(self) -> bool:
        return all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.size)
            for j in range(i + 1, self.size)
        )

    def rows_text(self, latex: bool = False) -> List[List[str]]:
        if latex:
            return [[entry.to_latex() for entry in row] for row in self.entries]
        return [[entry.to_text() for entry in row] for row in self.entries]

    def to_json(self) -> Dict[str, object]:
        return {
            "level": self.level,
            "partitions": [str(p) for p in self.partitions],
            "entries": [[entry.to_json() for entry in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, object]) -> "KacMatrix":
        partitions = tuple(Partition.parse(p) for p in data["partitions"])  # type: ignore[union-attr]
        entries = tuple(
            tuple(HPoly.from_json(entry) for entry in row)
            for row in data["entries"]  # type: ignore[union-attr]
        )
        if len(entries) != len(partitions) or any(len(row) != len(partitions) for row in entries):
            raise ValidationError("Kac matrix entries do not match its basis")
        return cls(int(data["level"]), partitions, entries)  # type: ignore[arg-type]


@dataclass(frozen=True)
class SingularVector:
    """P_{r,s}(t) with the coefficient of L_{-1}^{rs} normalized to 1."""

    r: int
    s: int
    coefficients: Mapping[Partition, LaurentPoly]

    @property
    def level(self) -> int:
        return self.r * self.s

    def coefficient(self, partition: Partition) -> LaurentPoly:
        return self.coefficients.get(partition, LaurentPoly())

    def ordered_items(self) -> List[Tuple[Partition, LaurentPoly]]:
        """Nonzero terms in increasing dominance-compatible order, L_{-1}^{rs} first."""
        order: Sequence[Partition] = tuple(reversed(enumerate_partitions(self.level)))
        return [(p, self.coefficients[p]) for p in order if p in self.coefficients]

    def substitute_inverse(self) -> Dict[Partition, LaurentPoly]:
        return {p: c.substitute_inverse() for p, c in self.coefficients.items()}

    def with_coefficients(self, coefficients: Mapping[Partition, LaurentPoly]) -> "SingularVector":
        return SingularVector(self.r, self.s, dict(coefficients))

    def to_text(self) -> str:
        return render_combination(
            (p.to_latex_word(), c) for p, c in self.ordered_items()
        )

    def to_latex(self) -> str:
        return render_combination(
            ((p.to_latex_word(), c) for p, c in self.ordered_items()), latex=True
        )

    def to_json(self) -> Dict[str, object]:
        return {
            "r": self.r,
            "s": self.s,
            "coefficients": [[str(p), c.to_json()] for p, c in self.ordered_items()],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, object]) -> "SingularVector":
        r, s = int(data["r"]), int(data["s"])  # type: ignore[arg-type]
        coefficients = {
            Partition.parse(p): LaurentPoly.from_json(c)
            for p, c in data["coefficients"]  # type: ignore[union-attr]
        }
        for partition in coefficients:
            if partition.size != r * s:
                raise ValidationError(f"Partition {partition} does not lie at level {r * s}")
        return cls(r, s, coefficients)
