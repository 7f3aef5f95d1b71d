from typing import Dict, Optional

from sympy import QQ
from sympy.polys.rings import ring

from ..models.partition import Partition
from ..models.verma import VirWord
from .memo import MemoCache

CH_RING, C, H = ring("c,h", QQ)

ChVector = Dict[Partition, object]  # Partition -> element of QQ[c, h]

EMPTY = Partition()


def _accumulate(target: ChVector, partition: Partition, coeff) -> None:
    if not coeff:
        return
    total = target.get(partition)
    total = coeff if total is None else total + coeff
    if total:
        target[partition] = total
    else:
        target.pop(partition, None)


class VermaRepository:
    """Memoized normal ordering in the Verma module over QQ[c, h].

    PBW monomials are L_{-lambda}|c,h> = L_{-lambda_1} ... L_{-lambda_k}|c,h> with
    the largest part leftmost. Results depend on neither t nor the substitution
    c = c(t), so one store serves every caller.
    """

    def __init__(self) -> None:
        self._lower = MemoCache("lower")
        self._raise = MemoCache("raise")
        self._gram = MemoCache("gram")

    # -- single generators on basis vectors ----------------------------------

    def lower(self, m: int, partition: Partition) -> ChVector:
        """L_{-m} L_{-lambda}|c,h> in the PBW basis (m > 0)."""
        return self._lower.get_or_compute(
            (m, partition), lambda: self._compute_lower(m, partition)
        )

    def _compute_lower(self, m: int, partition: Partition) -> ChVector:
        if not partition or m >= partition[0]:
            return {Partition((m,) + tuple(partition)): CH_RING.one}
        head, rest = partition[0], partition.rest()
        result = self.lower_vector(head, self.lower(m, rest))
        _accumulate(result, Partition((m + head,) + tuple(rest)), CH_RING(head - m))
        return result

    def raise_(self, n: int, partition: Partition) -> ChVector:
        """L_n L_{-lambda}|c,h> in the PBW basis (n > 0)."""
        return self._raise.get_or_compute(
            (n, partition), lambda: self._compute_raise(n, partition)
        )

    def _compute_raise(self, n: int, partition: Partition) -> ChVector:
        if not partition or n > partition.size:
            return {}
        head, rest = partition[0], partition.rest()
        result = self.lower_vector(head, self.raise_(n, rest))
        factor = CH_RING(n + head)
        k = n - head
        if k == 0:
            central = C * QQ(n**3 - n, 12)
            _accumulate(result, rest, factor * (H + rest.size) + central)
            return result
        inner = self.raise_(k, rest) if k > 0 else self.lower(-k, rest)
        for partition_, coeff in inner.items():
            _accumulate(result, partition_, factor * coeff)
        return result

    # -- vectors --------------------------------------------------------------

    def lower_vector(self, m: int, vector: ChVector) -> ChVector:
        result: ChVector = {}
        for partition, coeff in vector.items():
            for image, image_coeff in self.lower(m, partition).items():
                _accumulate(result, image, coeff * image_coeff)
        return result

    def raise_vector(self, n: int, vector: ChVector) -> ChVector:
        result: ChVector = {}
        for partition, coeff in vector.items():
            for image, image_coeff in self.raise_(n, partition).items():
                _accumulate(result, image, coeff * image_coeff)
        return result

    def apply_word(self, word: VirWord, level_cap: Optional[int] = None) -> ChVector:
        """Image of ``word|c,h>`` in the PBW basis.

        The image is homogeneous of level ``word.level``; when that exceeds
        ``level_cap`` (or is negative) the result is empty.
        """
        if word.level < 0 or (level_cap is not None and word.level > level_cap):
            return {}
        vector: ChVector = {EMPTY: CH_RING.one}
        for n in reversed(word.indices):
            if n < 0:
                vector = self.lower_vector(-n, vector)
            else:
                vector = self.raise_vector(n, vector)
            if not vector:
                break
        return vector

    # -- contravariant form ---------------------------------------------------

    def gram(self, lam: Partition, mu: Partition):
        """<c,h| L_mu L_{-lambda} |c,h> with L_mu = L_{mu_k} ... L_{mu_1}."""
        if lam.size != mu.size:
            return CH_RING.zero
        return self._gram.get_or_compute((lam, mu), lambda: self._compute_gram(lam, mu))

    def _compute_gram(self, lam: Partition, mu: Partition):
        if not mu:
            return CH_RING.one
        head, rest = mu[0], mu.rest()
        total = CH_RING.zero
        for partition, coeff in self.raise_(head, lam).items():
            total += coeff * self.gram(partition, rest)
        return total

    def cache_stats(self) -> Dict[str, Dict[str, int]]:
        return {
            cache.name: cache.stats() for cache in (self._lower, self._raise, self._gram)
        }
