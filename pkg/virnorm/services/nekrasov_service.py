"""Nekrasov instanton sums, the gauge-side recursion and the AGT cross-check."""
from dataclasses import dataclass
from typing import Any, List, Optional, Sequence, Tuple

from sympy import QQ

from ..algebra.laurent import h_rs
from ..algebra.quadratic import QuadraticSurd
from ..algebra.rational import BigRat, RatLike, format_rat, rational_sqrt, to_rat
from ..algebra.ratfunc import RatFunc, evaluate_ratfunc, ratfunc_field, ratfunc_text
from ..core.exceptions import CalibrationError, PoleCollisionError, ValidationError
from ..core.logging import get_logger
from ..models.gauge import GaugeParams, TuplePartition, enumerate_tuple_partitions
from ..models.partition import arm_leg
from ..repositories.memo import MemoCache
from ..schemas.report import CheckRecord
from .base import CheckService, Outcome, difference_text, rs_pairs
from .virasoro_service import VirasoroService, rrs_formula

logger = get_logger(__name__)

CANDIDATE_EXPONENTS = (2, 4)
A_FIELD, (A_GEN,) = ratfunc_field(("a",))


@dataclass(frozen=True)
class Calibration:
    """Exponent E with f_1 = (eps1 eps2)^E Z_1, and the identity it was read from."""

    exponent: int
    evidence: str


def h_from_a(t0: BigRat, a0: Any) -> Any:
    """h = (a^2 - (1 - t)^2) / (4t) under eps1 = -t, eps2 = 1."""
    if not t0:
        raise PoleCollisionError(offender="t = 0")
    return (a0 * a0 - (1 - t0) ** 2) / (4 * t0)


def a_from_h(t0: BigRat, h0: BigRat) -> Any:
    """A root of a^2 = 4 t h + (1 - t)^2; a quadratic surd when the square is irrational."""
    square = 4 * t0 * h0 + (1 - t0) ** 2
    root = rational_sqrt(square)
    return root if root is not None else QuadraticSurd.sqrt(square)


def pair_factor(alpha: int, beta: int, Y: TuplePartition, params: GaugeParams) -> Any:
    """
    n_{alpha,beta}(Y) for 1-based component indices.

    Args:
        alpha: First component index
        beta: Second component index
        Y: Tuple of Young diagrams of length params.rank
        params: Equivariant parameters and Coulomb moduli

    Returns:
        The product over boxes of Y_alpha and Y_beta; 1 when both are empty
    """
    if Y.rank != params.rank:
        raise ValidationError(f"{Y} has {Y.rank} components, expected {params.rank}")
    y_alpha, y_beta = Y.components[alpha - 1], Y.components[beta - 1]
    shift = params.a[beta - 1] - params.a[alpha - 1]
    eps1, eps2 = params.eps1, params.eps2
    product: Any = None
    for box in y_alpha.boxes():
        arm, _ = arm_leg(y_alpha, box)
        _, leg = arm_leg(y_beta, box)
        factor = shift + eps1 * (-leg) + eps2 * (arm + 1)
        product = factor if product is None else product * factor
    for box in y_beta.boxes():
        _, leg = arm_leg(y_alpha, box)
        arm, _ = arm_leg(y_beta, box)
        factor = shift + eps1 * (leg + 1) + eps2 * (-arm)
        product = factor if product is None else product * factor
    return params.one if product is None else product


class NekrasovService(CheckService):
    """Service for instanton sums and their comparison with the Virasoro side."""

    def __init__(self, virasoro: Optional[VirasoroService] = None):
        self.virasoro = virasoro or VirasoroService()
        self._zn_by_t = MemoCache("zn_by_t")
        self._z_values = MemoCache("z_values")
        self._calibration: Optional[Calibration] = None

    # -- instanton sums -----------------------------------------------------

    def term(self, Y: TuplePartition, params: GaugeParams) -> Any:
        """1 / prod_{alpha,beta} n_{alpha,beta}(Y)."""
        denominator: Any = None
        for alpha in range(1, params.rank + 1):
            for beta in range(1, params.rank + 1):
                factor = pair_factor(alpha, beta, Y, params)
                denominator = factor if denominator is None else denominator * factor
        if not denominator:
            raise PoleCollisionError(offender=f"n(Y) = 0 at Y = {Y}")
        return params.one / denominator

    def nekrasov_Zn(self, n: int, params: GaugeParams, reverse: bool = False) -> Any:
        """
        Z_n = sum over rank-tuples Y with |Y| = n of 1 / prod n_{alpha,beta}(Y).

        Args:
            n: Instanton number, n >= 0
            params: Generic symbols or a rational / quadratic-surd point
            reverse: Sum the tuples in the opposite order

        Returns:
            A reduced field element in generic mode, else an exact value

        Raises:
            PoleCollisionError: If some n_{alpha,beta}(Y) vanishes at the point
        """
        if n < 0:
            raise ValidationError(f"Instanton number must be nonnegative, got {n}", field="n")
        tuples = list(enumerate_tuple_partitions(n, params.rank))
        if reverse:
            tuples.reverse()
        total: Any = None
        for Y in tuples:
            value = self.term(Y, params)
            total = value if total is None else value + total
        return total

    # -- dictionary calibration ------------------------------------------------

    def calibrate_exponent(self) -> Calibration:
        """
        Find E in {2, 4} with f_1(t, h(t, a)) = (-t)^E Z_1 identically in QQ(t, a).

        Raises:
            CalibrationError: If neither exponent matches
        """
        if self._calibration is not None:
            return self._calibration
        _, (t, a) = ratfunc_field(("t", "a"))
        params = GaugeParams.virasoro(t, a)
        z1 = self.nekrasov_Zn(1, params)
        f1 = evaluate_ratfunc(
            self.virasoro.gaiotto_coeff(1), {"t": t, "h": h_from_a(t, a)}
        )
        tried = {}
        for exponent in CANDIDATE_EXPONENTS:
            weighted = (-t) ** exponent * z1
            tried[str(exponent)] = ratfunc_text(weighted)
            if weighted == f1:
                self._calibration = Calibration(
                    exponent=exponent,
                    evidence=f"f_1 = {ratfunc_text(f1)} = (eps1 eps2)^{exponent} Z_1",
                )
                logger.info(
                    "Exponent calibrated",
                    extra={"event": "calibrated", "exponent": exponent},
                )
                return self._calibration
        raise CalibrationError(details={"f_1": ratfunc_text(f1), "candidates": tried})

    @property
    def exponent(self) -> int:
        return self.calibrate_exponent().exponent

    # -- pointwise values in the Virasoro dictionary --------------------------

    def virasoro_Zn(self, n: int, t0: RatLike, reverse: bool = False) -> RatFunc:
        """
        Z_n at eps1 = -t0, eps2 = 1 as a reduced element of QQ(a).

        Summands can have poles at a = +-(k t0 + l) that cancel in the sum, so
        points are evaluated only after summing in QQ(a).
        """
        t0 = to_rat(t0)
        return self._zn_by_t.get_or_compute(
            (n, t0, reverse), lambda: self._compute_virasoro_Zn(n, t0, reverse)
        )

    def _compute_virasoro_Zn(self, n: int, t0: BigRat, reverse: bool) -> RatFunc:
        if n == 0:
            return A_FIELD.one
        if not t0:
            raise PoleCollisionError(offender="t = 0")
        return self.nekrasov_Zn(n, GaugeParams.virasoro(t0, A_GEN), reverse=reverse)

    def gauge_value(self, n: int, t0: RatLike, a0: Any, reverse: bool = False) -> BigRat:
        """(eps1 eps2)^{En} Z_n at (t0, a0); a0 may be a quadratic surd."""
        t0 = to_rat(t0)
        value = evaluate_ratfunc(self.virasoro_Zn(n, t0, reverse), {"a": a0})
        value = value * (-t0) ** (self.exponent * n)
        return value.rational_value() if isinstance(value, QuadraticSurd) else value

    def z_value(self, n: int, t0: RatLike, h0: RatLike) -> BigRat:
        """z_n(t0, h0): the gauge value at a root of a^2 = 4 t0 h0 + (1 - t0)^2."""
        t0, h0 = to_rat(t0), to_rat(h0)
        return self._z_values.get_or_compute(
            (n, t0, h0), lambda: self.gauge_value(n, t0, a_from_h(t0, h0))
        )

    # -- checks ----------------------------------------------------------------

    def agt_check(
        self, n_max: int, sample_points: Sequence[Tuple[BigRat, BigRat]]
    ) -> List[CheckRecord]:
        """
        Compare f_n(t0, h0) with (eps1 eps2)^{En} Z_n for points given as (t0, a0).

        Raises:
            CalibrationError: If no exponent fits at n = 1
        """
        exponent = self.exponent
        records = []
        for n in range(n_max + 1):
            for t0, a0 in sample_points:

                def body(n: int = n, t0: BigRat = t0, a0: BigRat = a0) -> Outcome:
                    h0 = h_from_a(t0, a0)
                    lhs = self.virasoro.gaiotto_value(n, t0, h0)
                    rhs = self.gauge_value(n, t0, a0)
                    return Outcome(
                        passed=lhs == rhs,
                        values={"h": format_rat(h0), "f": format_rat(lhs), "z": format_rat(rhs)},
                        diff=difference_text(lhs, rhs),
                        reference=f"E = {exponent}",
                    )

                records.append(
                    self.run_check(
                        "agt", f"n={n},t={format_rat(t0)},a={format_rat(a0)}", body
                    )
                )
        return records

    def recursion_rhs(self, n: int, t0: BigRat, h0: BigRat) -> BigRat:
        """delta_{n,0} + sum_{rs<=n} R_{r,s}(t0)^-1 z_{n-rs}(t0, h_{r,s}(t0)+rs) / (h0 - h_{r,s}(t0))."""
        total = QQ(1) if n == 0 else QQ(0)
        for r, s in rs_pairs(n):
            pole = h_rs(r, s).evaluate(t0)
            residue = rrs_formula(r, s).evaluate(t0)
            if h0 == pole:
                raise PoleCollisionError(offender=f"h = h_{{{r},{s}}}({format_rat(t0)})")
            if not residue:
                raise PoleCollisionError(offender=f"R_{{{r},{s}}}({format_rat(t0)}) = 0")
            total += self.z_value(n - r * s, t0, pole + r * s) / (residue * (h0 - pole))
        return total

    def gauge_recursion_check(
        self, n_max: int, sample_points: Sequence[Tuple[BigRat, BigRat]]
    ) -> List[CheckRecord]:
        records = []
        for n in range(n_max + 1):
            for t0, h0 in sample_points:

                def body(n: int = n, t0: BigRat = t0, h0: BigRat = h0) -> Outcome:
                    lhs = self.z_value(n, t0, h0)
                    rhs = self.recursion_rhs(n, t0, h0)
                    return Outcome(
                        passed=lhs == rhs,
                        values={"z": format_rat(lhs), "rhs": format_rat(rhs)},
                        diff=difference_text(lhs, rhs),
                    )

                records.append(
                    self.run_check(
                        "gauge-recursion", f"n={n},t={format_rat(t0)},h={format_rat(h0)}", body
                    )
                )
        return records

    def cross_side_check(
        self, n_max: int, sample_points: Sequence[Tuple[BigRat, BigRat]]
    ) -> List[CheckRecord]:
        """z_n from the gauge side against f_n from the Kac matrix at shared (t0, h0)."""
        records = []
        for n in range(n_max + 1):
            for t0, h0 in sample_points:

                def body(n: int = n, t0: BigRat = t0, h0: BigRat = h0) -> Outcome:
                    gauge = self.z_value(n, t0, h0)
                    algebra = self.virasoro.gaiotto_value(n, t0, h0)
                    return Outcome(
                        passed=gauge == algebra,
                        values={"z": format_rat(gauge), "f": format_rat(algebra)},
                        diff=difference_text(gauge, algebra),
                    )

                records.append(
                    self.run_check(
                        "cross-side", f"n={n},t={format_rat(t0)},h={format_rat(h0)}", body
                    )
                )
        return records

    def a_parity_check(self, n_max: int, t_values: Sequence[BigRat]) -> List[CheckRecord]:
        """Z_n in QQ(a) is unchanged by a -> -a."""
        records = []
        for n in range(1, n_max + 1):
            for t0 in t_values:

                def body(n: int = n, t0: BigRat = t0) -> Outcome:
                    lhs = self.virasoro_Zn(n, t0)
                    rhs = self.nekrasov_Zn(n, GaugeParams.virasoro(t0, A_GEN).negated_a())
                    return Outcome(
                        passed=lhs == rhs,
                        diff=None if lhs == rhs else ratfunc_text(lhs - rhs),
                    )

                records.append(self.run_check("a-parity", f"n={n},t={format_rat(t0)}", body))
        return records

    def eps_swap_check(self, n_max: int) -> List[CheckRecord]:
        """Each summand is fixed by eps1 <-> eps2 together with transposing every diagram."""
        params = GaugeParams.su2_generic()
        swapped = params.swapped()
        records = []
        for n in range(1, n_max + 1):

            def body(n: int = n) -> Outcome:
                for Y in enumerate_tuple_partitions(n, params.rank):
                    lhs = self.term(Y, params)
                    rhs = self.term(Y.transpose(), swapped)
                    if lhs != rhs:
                        return Outcome(passed=False, diff=f"Y = {Y}: {ratfunc_text(lhs - rhs)}")
                return Outcome(passed=True)

            records.append(self.run_check("eps-swap", f"n={n}", body))
        return records

    def homogeneity_check(
        self,
        n_max: int,
        t_values: Sequence[BigRat],
        factor: RatLike = QQ(3, 2),
    ) -> List[CheckRecord]:
        """Z_n(lambda eps1, lambda eps2, lambda a) = lambda^(-4n) Z_n(eps1, eps2, a)."""
        factor = to_rat(factor)
        records = []
        for n in range(1, n_max + 1):
            for t0 in t_values:

                def body(n: int = n, t0: BigRat = t0) -> Outcome:
                    scaled = GaugeParams.virasoro(t0, A_GEN).scaled(factor)
                    lhs = self.nekrasov_Zn(n, scaled)
                    rhs = self.virasoro_Zn(n, t0) / factor ** (4 * n)
                    return Outcome(
                        passed=lhs == rhs,
                        values={"lambda": format_rat(factor)},
                        diff=None if lhs == rhs else ratfunc_text(lhs - rhs),
                    )

                records.append(
                    self.run_check("homogeneity", f"n={n},t={format_rat(t0)}", body)
                )
        return records

    def summation_order_check(
        self, n: int, sample_points: Sequence[Tuple[BigRat, BigRat]]
    ) -> List[CheckRecord]:
        records = []
        for t0, a0 in sample_points:

            def body(t0: BigRat = t0, a0: BigRat = a0) -> Outcome:
                forward = self.gauge_value(n, t0, a0)
                backward = self.gauge_value(n, t0, a0, reverse=True)
                return Outcome(
                    passed=forward == backward,
                    values={"z": format_rat(forward)},
                    diff=difference_text(forward, backward),
                )

            records.append(
                self.run_check(
                    "summation-order", f"n={n},t={format_rat(t0)},a={format_rat(a0)}", body
                )
            )
        return records

    def generic_Zn(self, n: int, rank: int = 2) -> RatFunc:
        """Z_n in QQ(e1, e2, a1..ar)."""
        return self.nekrasov_Zn(n, GaugeParams.generic(rank))

    def gauge_checks(
        self,
        n_max: int,
        t_values: Sequence[BigRat],
        swap_level: int = 3,
    ) -> List[CheckRecord]:
        """The structural identities of Z_n: a-parity, eps-swap and homogeneity."""
        records = self.a_parity_check(n_max, t_values)
        records.extend(self.eps_swap_check(min(n_max, swap_level)))
        records.extend(self.homogeneity_check(n_max, t_values))
        return records
