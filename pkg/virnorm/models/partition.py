"""Integer partitions and Young-diagram combinatorics."""
import re
from collections import Counter
from enum import Enum
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, List, NamedTuple, Tuple

from ..core.exceptions import ValidationError

_PARTITION_RE = re.compile(r"^\(\s*(\d+(?:\s*,\s*\d+)*)?\s*,?\s*\)$")


class Box(NamedTuple):
    """Cell (row i, column j) of a Young diagram, both 1-based."""

    i: int
    j: int


class Dominance(str, Enum):
    """Outcome of comparing two partitions in the dominance order."""

    LEQ = "true"
    NOT_LEQ = "false"
    INCOMPARABLE = "incomparable"


class Partition(tuple):
    """Non-increasing tuple of positive integers; hashable and usable as a dict key."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        values = tuple(int(p) for p in parts)
        if any(p < 1 for p in values):
            raise ValidationError(f"Partition parts must be positive: {values}")
        if any(values[i] < values[i + 1] for i in range(len(values) - 1)):
            raise ValidationError(f"Partition parts must be non-increasing: {values}")
        return super().__new__(cls, values)

    @classmethod
    def sorted_from(cls, parts: Iterable[int]) -> "Partition":
        """Partition from parts in any order."""
        return cls(sorted(parts, reverse=True))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Read ``"(4,4,2,1,1,1)"``; ``"()"`` is the empty partition."""
        match = _PARTITION_RE.match(text.strip())
        if not match:
            raise ValidationError(f"Malformed partition: {text!r}")
        body = match.group(1)
        if not body:
            return cls()
        return cls(int(p) for p in body.split(","))

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """lambda_i with the convention lambda_i = 0 for i beyond the length."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def multiplicities(self) -> Counter:
        return Counter(self)

    def boxes(self) -> List[Box]:
        return [Box(i, j) for i, row in enumerate(self, start=1) for j in range(1, row + 1)]

    def contains(self, box: Box) -> bool:
        return box.j <= self.part(box.i) and box.i >= 1 and box.j >= 1

    def rest(self) -> "Partition":
        return Partition(self[1:])

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self) + ")"

    def __repr__(self) -> str:
        return f"Partition{str(self)}"

    def to_latex_word(self, generator: str = "L") -> str:
        """``L_{-2}L_{-1}^{2}``-style product for this partition."""
        if not self:
            return "1"
        pieces = []
        for part, count in _runs(self):
            power = "" if count == 1 else f"^{count}" if count < 10 else f"^{{{count}}}"
            pieces.append(f"{generator}_{{-{part}}}{power}")
        return " ".join(pieces)


def _runs(parts: Tuple[int, ...]) -> List[Tuple[int, int]]:
    runs: List[Tuple[int, int]] = []
    for p in parts:
        if runs and runs[-1][0] == p:
            runs[-1] = (p, runs[-1][1] + 1)
        else:
            runs.append((p, 1))
    return runs


def _partitions_with_max(n: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for tail in _partitions_with_max(n - first, first):
            yield (first,) + tail


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> Tuple[Partition, ...]:
    """All partitions of n in reverse-lexicographic order, e.g. (3), (2,1), (1,1,1)."""
    if n < 0:
        raise ValidationError(f"Cannot enumerate partitions of a negative integer: {n}")
    return tuple(Partition(p) for p in _partitions_with_max(n, n))


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) through Euler's pentagonal-number recurrence."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        first = k * (3 * k - 1) // 2
        if first > n:
            break
        sign = 1 if k % 2 else -1
        total += sign * partition_count(n - first)
        second = k * (3 * k + 1) // 2
        if second <= n:
            total += sign * partition_count(n - second)
        k += 1
    return total


def conjugate(partition: Partition) -> Partition:
    """Transpose of the Young diagram."""
    if not partition:
        return Partition()
    return Partition(
        sum(1 for part in partition if part >= j) for j in range(1, partition[0] + 1)
    )


def arm_leg(diagram: Partition, box: Box) -> Tuple[int, int]:
    """Generalized arm and leg; negative outside the diagram.

    arm = lambda_i - j and leg = lambda^vee_j - i, with lambda_i = 0 past the length.
    """
    transposed = conjugate(diagram)
    return diagram.part(box.i) - box.j, transposed.part(box.j) - box.i


def z_lambda(partition: Partition) -> int:
    """Centralizer order prod_i i^{m_i} m_i!."""
    result = 1
    for part, count in partition.multiplicities().items():
        result *= part**count * factorial(count)
    return result


def dominance_leq(mu: Partition, lam: Partition) -> Dominance:
    """Compare mu <= lam in the dominance order by partial sums.

    Raises:
        ValidationError: If the partitions have different sizes
    """
    if mu.size != lam.size:
        raise ValidationError(
            f"Dominance needs equal sizes, got |{mu}| = {mu.size} and |{lam}| = {lam.size}"
        )
    length = max(len(mu), len(lam))
    mu_sum = lam_sum = 0
    mu_below = lam_below = False
    for i in range(1, length + 1):
        mu_sum += mu.part(i)
        lam_sum += lam.part(i)
        if mu_sum < lam_sum:
            mu_below = True
        elif mu_sum > lam_sum:
            lam_below = True
    if not lam_below:
        return Dominance.LEQ
    if not mu_below:
        return Dominance.NOT_LEQ
    return Dominance.INCOMPARABLE


def rectangle(rows: int, columns: int) -> Partition:
    """The partition (columns^rows), e.g. rectangle(2, 3) = (3,3)."""
    return Partition([columns] * rows)
