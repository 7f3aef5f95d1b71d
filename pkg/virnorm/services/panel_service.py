"""Seeded panels of exact sample points for the pointwise recursion and AGT checks."""
import random
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from sympy import QQ

from ..algebra.laurent import h_rs
from ..algebra.rational import BigRat, format_rat
from ..core.config import get_settings
from ..core.exceptions import ValidationError
from ..core.logging import get_logger
from .base import rs_pairs
from .nekrasov_service import h_from_a
from .virasoro_service import rrs_formula

logger = get_logger(__name__)

MAX_NUMERATOR = 9
MAX_DENOMINATOR = 7
MAX_DRAWS = 10_000


@dataclass
class SamplePanel:
    """Points drawn for one bound, with the candidates rejected on the way."""

    seed: int
    level: int
    points: List[Tuple[BigRat, BigRat]] = field(default_factory=list)
    rejected: int = 0

    def t_values(self) -> List[BigRat]:
        seen: List[BigRat] = []
        for t0, _ in self.points:
            if t0 not in seen:
                seen.append(t0)
        return seen

    def describe(self) -> str:
        return "; ".join(f"({format_rat(x)}, {format_rat(y)})" for x, y in self.points)


class PanelService:
    """Draws small-height rationals and rejects any that meet a pole of either side."""

    def __init__(self, seed: Optional[int] = None, size: Optional[int] = None):
        settings = get_settings()
        self.seed = settings.sample_seed if seed is None else seed
        self.size = settings.sample_count if size is None else size
        if self.size < 1:
            raise ValidationError("Panel size must be positive", field="samples")

    def _rational(self, rng: random.Random, max_numerator: int = MAX_NUMERATOR) -> BigRat:
        return QQ(rng.randint(-max_numerator, max_numerator), rng.randint(1, MAX_DENOMINATOR))

    def t_allowed(self, t0: BigRat, level: int) -> bool:
        """
        Whether t0 is usable for every check up to ``level``.

        Rejects t0 in {0, 1, -1}, zeros of R_{r,s}, coincidences
        h_{r,s}(t0) + rs = h_{r',s'}(t0) met by the shifted recursion terms, and
        the negative ratios -p/q (p, q <= level) where a diagonal Nekrasov
        factor vanishes identically in a.
        """
        if t0 in (0, 1, -1):
            return False
        if t0 < 0 and -t0.numerator <= level and t0.denominator <= level:
            return False
        pairs = rs_pairs(level)
        if any(not rrs_formula(r, s).evaluate(t0) for r, s in pairs):
            return False
        poles = {(r, s): h_rs(r, s).evaluate(t0) for r, s in pairs}
        for (r, s), pole in poles.items():
            shifted = pole + r * s
            for (r2, s2), other in poles.items():
                if r * s + r2 * s2 <= level and shifted == other:
                    return False
        return True

    def h_allowed(self, t0: BigRat, h0: BigRat, level: int) -> bool:
        """h0 off the Kac locus h = h_{r,s}(t0) for rs <= level."""
        return all(h0 != h_rs(r, s).evaluate(t0) for r, s in rs_pairs(max(level, 1)))

    def _draw(self, level: int, kind: str) -> SamplePanel:
        rng = random.Random(f"{self.seed}:{kind}:{level}")
        panel = SamplePanel(seed=self.seed, level=level)
        draws = 0
        while len(panel.points) < self.size:
            draws += 1
            if draws > MAX_DRAWS:
                raise ValidationError(f"Could not draw {self.size} sample points", field="samples")
            t0 = self._rational(rng)
            second = self._rational(rng, 2 * MAX_NUMERATOR)
            if not self.t_allowed(t0, max(level, 1)):
                panel.rejected += 1
                continue
            if kind == "ta":
                if not second:
                    panel.rejected += 1
                    continue
                h0 = h_from_a(t0, second)
            else:
                h0 = second
            if not self.h_allowed(t0, h0, level) or (t0, second) in panel.points:
                panel.rejected += 1
                continue
            panel.points.append((t0, second))
        logger.debug(
            "Sample panel drawn",
            extra={
                "event": "panel_drawn",
                "kind": kind,
                "level": level,
                "size": len(panel.points),
                "rejected": panel.rejected,
            },
        )
        return panel

    def th_panel(self, level: int) -> SamplePanel:
        """Points (t0, h0) for the recursion checks up to ``level``."""
        return self._draw(level, "th")

    def ta_panel(self, level: int) -> SamplePanel:
        """Points (t0, a0) for the AGT check; a0 != 0 and h(t0, a0) off the Kac locus."""
        return self._draw(level, "ta")
