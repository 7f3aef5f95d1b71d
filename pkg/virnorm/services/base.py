import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from ..core.exceptions import (
    DivisionByZeroError,
    InvariantViolation,
    PoleCollisionError,
    UndefinedDegreeError,
)
from ..core.logging import get_logger, log_check, log_error
from ..schemas.report import CheckRecord, CheckStatus

logger = get_logger(__name__)


@dataclass
class Outcome:
    """What a check body reports back to :meth:`CheckService.run_check`."""

    passed: bool
    values: Dict[str, str] = field(default_factory=dict)
    diff: Optional[str] = None
    reference: Optional[str] = None
    latex: Optional[str] = None


def difference_text(lhs, rhs) -> Optional[str]:
    """``lhs - rhs`` as text, or None when they agree."""
    if lhs == rhs:
        return None
    delta = lhs - rhs
    return delta.to_text() if hasattr(delta, "to_text") else str(delta)


def rs_pairs(max_level: int) -> List[Tuple[int, int]]:
    """All (r, s) with rs <= max_level, ordered by level and then by r."""
    return [
        (r, n // r)
        for n in range(1, max_level + 1)
        for r in range(1, n + 1)
        if n % r == 0
    ]


class CheckService:
    """Shared bookkeeping for services that emit check records."""

    def run_check(
        self,
        check: str,
        identifier: str,
        body: Callable[[], Outcome],
        pair: Optional[Tuple[int, int]] = None,
    ) -> CheckRecord:
        """
        Run one check body and turn its outcome into a record.

        Args:
            check: Check name shown in reports
            identifier: Instance being checked, e.g. ``r=2,s=1``
            body: Callable computing the outcome
            pair: Optional (r, s) pair echoed into the record

        Returns:
            CheckRecord: pass/fail from the outcome; ``skipped`` on a pole
            collision and ``error`` when an internal invariant breaks
        """
        start = time.perf_counter()
        values: Dict[str, str] = {}
        diff: Optional[str] = None
        reference: Optional[str] = None
        latex: Optional[str] = None
        try:
            outcome = body()
        except PoleCollisionError as exc:
            status = CheckStatus.SKIPPED
            diff = exc.message
        except (InvariantViolation, DivisionByZeroError, UndefinedDegreeError) as exc:
            status = CheckStatus.ERROR
            diff = exc.message
            log_error(exc, {"check": check, "identifier": identifier})
        else:
            status = CheckStatus.PASS if outcome.passed else CheckStatus.FAIL
            values, diff = outcome.values, outcome.diff
            reference, latex = outcome.reference, outcome.latex
        elapsed_ms = (time.perf_counter() - start) * 1000.0

        log_check(check, identifier, status.value, elapsed_ms)
        return CheckRecord(
            check=check,
            identifier=identifier,
            status=status,
            pair=list(pair) if pair else None,
            values=values,
            diff=diff,
            reference=reference,
            latex=latex,
            wall_time_ms=elapsed_ms,
        )
