"""Symmetric functions in the power-sum basis and Jack polynomials over QQ(t)."""
from typing import Any, Dict, List, Tuple

from sympy import QQ
from sympy.polys.rings import ring

from ..algebra.laurent import LaurentPoly, laurent_product
from ..algebra.linalg import inverse_field
from ..algebra.quadratic import Sqrt2Ext
from ..algebra.ratfunc import evaluate_ratfunc, ratfunc_field, ratfunc_text, ratfunc_to_laurent
from ..core.exceptions import InvariantViolation, ValidationError
from ..core.logging import get_logger
from ..models.partition import (
    Dominance,
    Partition,
    arm_leg,
    dominance_leq,
    enumerate_partitions,
    z_lambda,
)
from ..models.symfunc import JackJ, JackP, SymFunc
from ..repositories.memo import MemoCache
from ..schemas.report import CheckRecord
from .base import CheckService, Outcome

logger = get_logger(__name__)

T_FIELD, (T,) = ratfunc_field(("t",))


def hook_product(partition: Partition, shift_t: bool) -> Any:
    """prod over boxes of (t a + l + t) when shift_t, else of (t a + l + 1), in QQ(t)."""
    result = T_FIELD.one
    for box in partition.boxes():
        arm, leg = arm_leg(partition, box)
        result *= T * arm + leg + (T if shift_t else 1)
    return result


def jack_norm_formula(partition: Partition) -> Any:
    """<P_lambda, P_lambda> = prod (t a + l + t) / (t a + l + 1)."""
    return hook_product(partition, True) / hook_product(partition, False)


def theta_top_coeff(partition: Partition) -> LaurentPoly:
    """prod over boxes (i, j) != (1, 1) of ((j-1) t - (i-1))."""
    if partition.size < 1:
        raise ValidationError("theta needs a nonempty partition")
    return laurent_product(
        LaurentPoly.from_t_terms({1: box.j - 1, 0: -(box.i - 1)})
        for box in partition.boxes()
        if (box.i, box.j) != (1, 1)
    )


class SymFuncService(CheckService):
    """Service for the t-deformed inner product and Jack symmetric functions."""

    def __init__(self) -> None:
        self._transitions = MemoCache("monomial_transition")
        self._jack_bases = MemoCache("jack_basis")
        self._integral = MemoCache("jack_integral")

    # -- inner product --------------------------------------------------------

    @staticmethod
    def _pairing_weight(partition: Partition, sample: Any) -> Any:
        if isinstance(sample, Sqrt2Ext):
            return Sqrt2Ext(LaurentPoly.t(partition.length) * z_lambda(partition))
        if isinstance(sample, LaurentPoly):
            return LaurentPoly.t(partition.length) * z_lambda(partition)
        return T**partition.length * z_lambda(partition)

    def inner_product(self, f: SymFunc, g: SymFunc) -> Any:
        """<p_lambda, p_mu>_t = delta z_lambda t^{l(lambda)}, extended bilinearly."""
        total: Any = 0
        if f.degree != g.degree:
            return total
        for partition, coeff in f.terms.items():
            other = g.terms.get(partition)
            if other is None:
                continue
            total = coeff * other * self._pairing_weight(partition, coeff) + total
        return total

    # -- monomial to power-sum transition -------------------------------------

    def monomial_to_powersum(self, partition: Partition) -> SymFunc:
        """m_lambda in the power-sum basis (rational coefficients)."""
        rows = self._transition(partition.size)
        return SymFunc.from_terms(partition.size, rows[partition])

    def _transition(self, degree: int) -> Dict[Partition, Dict[Partition, Any]]:
        return self._transitions.get_or_compute(degree, lambda: self._compute_transition(degree))

    def _compute_transition(self, degree: int) -> Dict[Partition, Dict[Partition, Any]]:
        partitions = enumerate_partitions(degree)
        if degree == 0:
            return {Partition(): {Partition(): QQ(1)}}
        names = ",".join(f"x{i}" for i in range(1, degree + 1))
        x_ring, *xs = ring(names, QQ)
        power = [x_ring.zero] + [sum(x**k for x in xs) for k in range(1, degree + 1)]

        def exponent(nu: Partition) -> Tuple[int, ...]:
            return tuple(nu) + (0,) * (degree - len(nu))

        # p_mu = sum_nu M[mu][nu] m_nu, read off at the sorted exponent of m_nu
        matrix = []
        for mu in partitions:
            product = x_ring.one
            for part in mu:
                product *= power[part]
            matrix.append([product.get(exponent(nu), QQ(0)) for nu in partitions])
        inverse = inverse_field(matrix)
        # m_nu = sum_mu (M^-1)[nu][mu] p_mu
        return {
            nu: {mu: inverse[i][j] for j, mu in enumerate(partitions) if inverse[i][j]}
            for i, nu in enumerate(partitions)
        }

    # -- Jack polynomials -----------------------------------------------------

    def _jack_basis(self, degree: int) -> Dict[Partition, JackP]:
        return self._jack_bases.get_or_compute(degree, lambda: self._compute_jack_basis(degree))

    def _compute_jack_basis(self, degree: int) -> Dict[Partition, JackP]:
        """Gram-Schmidt on monomials in increasing lexicographic order.

        Lexicographic order refines dominance, so each m_lambda is corrected
        only by Jack polynomials of lexicographically smaller partitions.
        """
        basis: Dict[Partition, JackP] = {}
        norms: Dict[Partition, Any] = {}
        for lam in reversed(enumerate_partitions(degree)):
            expansion = self._to_field(self.monomial_to_powersum(lam))
            monomials: Dict[Partition, Any] = {lam: T_FIELD.one}
            for mu, previous in basis.items():
                weight = self.inner_product(expansion, previous.expansion) / norms[mu]
                if not weight:
                    continue
                expansion = expansion - previous.expansion.scale(weight)
                for nu, coeff in previous.monomial_coeffs.items():
                    monomials[nu] = monomials.get(nu, T_FIELD.zero) - weight * coeff
            jack = JackP(lam, {p: c for p, c in monomials.items() if c}, expansion)
            basis[lam] = jack
            norms[lam] = self.inner_product(expansion, expansion)
        logger.debug("Jack basis computed", extra={"degree": degree, "size": len(basis)})
        return basis

    @staticmethod
    def _to_field(value: SymFunc) -> SymFunc:
        return SymFunc.from_terms(
            value.degree, {p: T_FIELD(c) for p, c in value.terms.items()}
        )

    def jack_monic(self, partition: Partition) -> JackP:
        """
        Monic Jack symmetric function P_lambda.

        Args:
            partition: lambda

        Returns:
            JackP: Coefficients in QQ(t), monomial coefficient of m_lambda equal to 1
        """
        return self._jack_basis(partition.size)[partition]

    def jack_integral(self, partition: Partition) -> JackJ:
        """
        Integral form J_lambda = prod (t a + l + 1) P_lambda.

        Raises:
            InvariantViolation: If a coefficient is not a polynomial in t or the
                p_{(1^n)} coefficient is not 1
        """
        return self._integral.get_or_compute(partition, lambda: self._compute_integral(partition))

    def _compute_integral(self, partition: Partition) -> JackJ:
        scaled = self.jack_monic(partition).expansion.scale(hook_product(partition, False))
        coefficients: Dict[Partition, LaurentPoly] = {}
        for mu, coeff in scaled.terms.items():
            if not coeff.denom.is_ground:
                raise InvariantViolation(
                    f"J_{partition} coefficient of p_{mu} is {ratfunc_text(coeff)}",
                    invariant="jack-integrality",
                )
            value = ratfunc_to_laurent(coeff)
            if value and value.maxmin_deg()[1] < 0:
                raise InvariantViolation(
                    f"J_{partition} coefficient of p_{mu} has negative powers",
                    invariant="jack-integrality",
                )
            coefficients[mu] = value
        ones = Partition([1] * partition.size)
        if coefficients.get(ones) != LaurentPoly.one():
            raise InvariantViolation(
                f"J_{partition} has p_{ones} coefficient "
                f"{coefficients.get(ones, LaurentPoly()).to_text()}",
                invariant="jack-normalization",
            )
        return JackJ(partition, coefficients)

    # -- checks ---------------------------------------------------------------

    def jack_norm_check(self, partition: Partition) -> CheckRecord:
        def body() -> Outcome:
            expansion = self.jack_monic(partition).expansion
            computed = self.inner_product(expansion, expansion)
            expected = jack_norm_formula(partition)
            return Outcome(
                passed=computed == expected,
                values={"norm": ratfunc_text(computed)},
                diff=None if computed == expected else ratfunc_text(computed - expected),
                reference="prod (t a + l + t) / (t a + l + 1)",
            )

        return self.run_check("jack-norm", str(partition), body)

    def orthogonality_check(self, degree: int) -> CheckRecord:
        def body() -> Outcome:
            basis = self._jack_basis(degree)
            partitions = list(basis)
            offending = [
                f"<P{lam}, P{mu}>"
                for i, lam in enumerate(partitions)
                for mu in partitions[i + 1 :]
                if self.inner_product(basis[lam].expansion, basis[mu].expansion)
            ]
            return Outcome(
                passed=not offending,
                values={"pairs": str(len(partitions) * (len(partitions) - 1) // 2)},
                diff=", ".join(offending) or None,
            )

        return self.run_check("jack-orthogonality", f"degree={degree}", body)

    def triangularity_check(self, partition: Partition) -> CheckRecord:
        def body() -> Outcome:
            support = self.jack_monic(partition).monomial_coeffs
            outside = [
                str(mu) for mu in support if dominance_leq(mu, partition) != Dominance.LEQ
            ]
            return Outcome(
                passed=not outside,
                diff=f"m_mu with mu not below {partition}: {', '.join(outside)}" if outside else None,
            )

        return self.run_check("jack-triangularity", str(partition), body)

    def integrality_check(self, partition: Partition) -> CheckRecord:
        def body() -> Outcome:
            jack = self.jack_integral(partition)
            fractional = [
                str(mu)
                for mu, coeff in jack.coefficients.items()
                if any(c.denominator != 1 for _, c in coeff.terms())
            ]
            return Outcome(
                passed=not fractional,
                values={"J": jack.to_text()},
                diff=f"non-integer coefficients at {', '.join(fractional)}" if fractional else None,
            )

        return self.run_check("jack-integrality", str(partition), body)

    def theta_check(self, partition: Partition) -> CheckRecord:
        def body() -> Outcome:
            top = Partition([partition.size])
            computed = self.jack_integral(partition).coefficient(top)
            expected = theta_top_coeff(partition)
            return Outcome(
                passed=computed == expected,
                values={"theta": expected.to_text()},
                diff=None if computed == expected else (computed - expected).to_text(),
                reference="prod_{(i,j) != (1,1)} ((j-1) t - (i-1))",
            )

        return self.run_check("jack-theta", str(partition), body)

    def specialization_check(self, partition: Partition) -> CheckRecord:
        """At t = 1 the monic Jack norm is 1."""

        def body() -> Outcome:
            expansion = self.jack_monic(partition).expansion
            value = evaluate_ratfunc(self.inner_product(expansion, expansion), {"t": QQ(1)})
            return Outcome(passed=value == 1, values={"norm_at_1": str(value)})

        return self.run_check("jack-specialization", str(partition), body)

    def powersum_expansion(self, degree: int) -> SymFunc:
        """n t sum_lambda [prod 1/(t a + l + t)] theta_lambda P_lambda."""
        total = SymFunc(degree)
        for lam, jack in self._jack_basis(degree).items():
            theta = T_FIELD.one * 0
            for exponent, coeff in theta_top_coeff(lam).t_terms():
                theta += coeff * T**exponent
            weight = T * degree * theta / hook_product(lam, True)
            total = total + jack.expansion.scale(weight)
        return total

    def powersum_expansion_check(self, degree: int) -> CheckRecord:
        if degree < 1:
            raise ValidationError("degree must be positive", field="degree")

        def body() -> Outcome:
            expansion = self.powersum_expansion(degree)
            expected = SymFunc.power_sum(Partition([degree]), T_FIELD.one)
            residual = expansion - expected
            return Outcome(
                passed=residual.is_zero(),
                diff=None if residual.is_zero() else residual.to_text(),
                reference="p_n = n t sum_lambda theta_lambda P_lambda / prod (t a + l + t)",
            )

        return self.run_check("powersum-expansion", f"n={degree}", body)

    def jack_checks(self, max_degree: int, integral_degree: int) -> List[CheckRecord]:
        """The full Jack suite: norms, orthogonality, triangularity, integrality, theta."""
        records: List[CheckRecord] = []
        for degree in range(1, max_degree + 1):
            records.append(self.orthogonality_check(degree))
            records.append(self.powersum_expansion_check(degree))
            for lam in enumerate_partitions(degree):
                records.append(self.jack_norm_check(lam))
                records.append(self.triangularity_check(lam))
                records.append(self.specialization_check(lam))
        for degree in range(1, integral_degree + 1):
            for lam in enumerate_partitions(degree):
                records.append(self.integrality_check(lam))
                records.append(self.theta_check(lam))
        return records
