"""Verma module computations: Kac matrices, singular vectors, norms and their checks."""
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.rings import ring

from ..algebra.laurent import LaurentPoly, c_of_t, h_rs, laurent_product
from ..algebra.linalg import bareiss_det, fraction_free_kernel, minor, solve_field
from ..algebra.rational import BigRat, RatLike, format_rat, to_rat
from ..algebra.ratfunc import RatFunc, evaluate_ratfunc, ratfunc_field
from ..algebra.unipoly import HPoly, hpoly_shift
from ..core.config import get_settings
from ..core.exceptions import (
    DivisionByZeroError,
    InvariantViolation,
    PoleCollisionError,
    ValidationError,
)
from ..core.logging import get_logger
from ..models.partition import Partition, enumerate_partitions, partition_count, rectangle, z_lambda
from ..models.verma import KacMatrix, SingularVector, VirWord
from ..repositories.memo import MemoCache
from ..repositories.verma_repository import CH_RING, C, H, VermaRepository
from ..schemas.report import CheckRecord
from .base import CheckService, Outcome, difference_text, rs_pairs

logger = get_logger(__name__)

T_RING, T_GEN = ring("t", QQ)
TH_FIELD, _ = ratfunc_field(("t", "h"))
TH_RING = TH_FIELD.ring
TH_T, TH_H = TH_RING.gens


def _laurent_to_t_ring(value: LaurentPoly, shift: int):
    return T_RING.from_dict({(e + shift,): c for e, c in value.t_terms()}) if value else T_RING.zero


def _t_ring_to_laurent(value) -> LaurentPoly:
    return LaurentPoly.from_t_terms({m[0]: c for m, c in value.terms()})


def _hpoly_to_th(value: HPoly, shift: int):
    total = TH_RING.zero
    for k, coeff in value.items():
        for e, c in coeff.t_terms():
            total += c * TH_T ** (e + shift) * TH_H**k
    return total


def _row_shift(row: Sequence) -> int:
    """Smallest d >= 0 making t^d * row polynomial in t."""
    lows = [0]
    for entry in row:
        coeffs = entry.coeffs if isinstance(entry, HPoly) else (entry,)
        lows.extend(-c.maxmin_deg()[1] for c in coeffs if c)
    return max(lows)


def rrs_formula(r: int, s: int) -> LaurentPoly:
    """R_{r,s}(t) = 2 prod (k u^-1 + l u) over 1-r <= k <= r, 1-s <= l <= s minus (0,0), (r,s)."""
    factors = [
        LaurentPoly.from_terms({-1: k, 1: l})
        for k in range(1 - r, r + 1)
        for l in range(1 - s, s + 1)
        if (k, l) not in ((0, 0), (r, s))
    ]
    return (laurent_product(factors) * 2).require_even()


def one_row_formula(s: int) -> LaurentPoly:
    """R_{1,s}(t) = 2 s! (s-1)! prod_{k=1}^{s-1} (k^2 t^2 - 1)."""
    factors = [LaurentPoly.from_t_terms({2: k * k, 0: -1}) for k in range(1, s)]
    return laurent_product(factors) * (2 * factorial(s) * factorial(s - 1))


def shapovalov_closed_form(r: int, s: int):
    """s^r r! prod_{k=1}^r [2h + s(k-1) + (s^2-1)c/12] in QQ[c, h]."""
    result = CH_RING(s**r * factorial(r))
    for k in range(1, r + 1):
        result *= 2 * H + s * (k - 1) + C * QQ(s * s - 1, 12)
    return result


class VirasoroService(CheckService):
    """Service for Verma module computations at c = c(t)."""

    def __init__(
        self,
        repository: Optional[VermaRepository] = None,
        singular_method: Optional[str] = None,
    ):
        self.repository = repository or VermaRepository()
        self.singular_method = singular_method or get_settings().singular_method
        self._c_powers: List[LaurentPoly] = [LaurentPoly.one()]
        self._hpoly_gram = MemoCache("hpoly_gram")
        self._singular = MemoCache("singular")
        self._norms = MemoCache("norms")
        self._gaiotto = MemoCache("gaiotto")
        self._gaiotto_values = MemoCache("gaiotto_values")

    # -- coefficient conversion ----------------------------------------------

    def _c_power(self, k: int) -> LaurentPoly:
        while len(self._c_powers) <= k:
            self._c_powers.append(self._c_powers[-1] * c_of_t())
        return self._c_powers[k]

    def ch_to_hpoly(self, value) -> HPoly:
        """Substitute c = c(t) into an element of QQ[c, h]."""
        coeffs: Dict[int, LaurentPoly] = {}
        for (i, j), coeff in value.terms():
            coeffs[j] = coeffs.get(j, LaurentPoly()) + self._c_power(i).scale(coeff)
        return HPoly.from_dict(coeffs)

    def ch_at(self, value, h_value: LaurentPoly) -> LaurentPoly:
        """Substitute c = c(t) and h = h_value into an element of QQ[c, h]."""
        return self.ch_to_hpoly(value).evaluate(h_value)

    # -- normal ordering and the contravariant form --------------------------

    def normal_order_apply(self, word: VirWord, level_cap: int) -> Dict[Partition, HPoly]:
        """
        Expand ``word|c(t), h>`` in the PBW basis.

        Args:
            word: Operator product read left to right
            level_cap: Components above this level are dropped

        Returns:
            Dict[Partition, HPoly]: Nonzero PBW coefficients
        """
        vector = self.repository.apply_word(word, level_cap)
        return {p: self.ch_to_hpoly(coeff) for p, coeff in vector.items()}

    def shapovalov(self, mu: Partition, lam: Partition) -> HPoly:
        """K_{lambda,mu} = <c,h| L_mu L_{-lambda} |c,h> at c = c(t)."""
        if mu.size != lam.size:
            return HPoly()
        return self._hpoly_gram.get_or_compute(
            (lam, mu), lambda: self.ch_to_hpoly(self.repository.gram(lam, mu))
        )

    def kac_matrix(self, level: int) -> KacMatrix:
        if level < 0:
            raise ValidationError(f"Level must be nonnegative, got {level}", field="level")
        partitions = enumerate_partitions(level)
        entries = tuple(
            tuple(self.shapovalov(mu, lam) for mu in partitions) for lam in partitions
        )
        return KacMatrix(level, partitions, entries)

    def kac_det_factors(self, level: int) -> Tuple[int, List[Tuple[int, int, int]]]:
        """Prefactor prod 2^{l(lambda)} z_lambda and the (r, s, p(n - rs)) exponents."""
        prefactor = 1
        for partition in enumerate_partitions(level):
            prefactor *= 2 ** partition.length * z_lambda(partition)
        exponents = [
            (r, s, partition_count(level - r * s)) for r, s in rs_pairs(level)
        ]
        return prefactor, exponents

    def kac_det_check(self, level: int) -> CheckRecord:
        """Compare det K_n with the Kac factorization as polynomials in (t, h)."""
        if level < 1:
            raise ValidationError(f"Level must be positive, got {level}", field="level")

        def body() -> Outcome:
            matrix = self.kac_matrix(level)
            shifts = [_row_shift(row) for row in matrix.entries]
            scaled = [
                [_hpoly_to_th(entry, d) for entry in row]
                for row, d in zip(matrix.entries, shifts)
            ]
            det = bareiss_det(scaled, TH_RING.one)

            prefactor, exponents = self.kac_det_factors(level)
            expected = TH_RING(prefactor)
            factor_count = 0
            for r, s, multiplicity in exponents:
                t_h_rs = _hpoly_to_th(HPoly.constant(h_rs(r, s) * LaurentPoly.t()), 0)
                expected *= (TH_T * TH_H - t_h_rs) ** multiplicity
                factor_count += multiplicity
            lhs = det * TH_T**factor_count
            rhs = expected * TH_T ** sum(shifts)
            factors = " ".join(
                f"(h - h_{{{r},{s}}})" + (f"^{m}" if m > 1 else "")
                for r, s, m in exponents
            )
            return Outcome(
                passed=lhs == rhs,
                values={"level": str(level), "factorization": f"{prefactor} {factors}"},
                diff=None if lhs == rhs else str((lhs - rhs).as_expr()),
                reference="prod 2^{l(lambda)} z_lambda prod_{rs<=n} (h - h_{r,s}(t))^{p(n-rs)}",
            )

        return self.run_check("kac-det", f"level={level}", body)

    # -- singular vectors -----------------------------------------------------

    def _annihilator_rows(self, r: int, s: int) -> List[List[LaurentPoly]]:
        level = r * s
        basis = enumerate_partitions(level)
        h_value = h_rs(r, s)
        rows: List[List[LaurentPoly]] = []
        for n in (1, 2):
            if n > level:
                continue
            targets = enumerate_partitions(level - n)
            index = {p: i for i, p in enumerate(targets)}
            block = [[LaurentPoly() for _ in basis] for _ in targets]
            for column, lam in enumerate(basis):
                for mu, coeff in self.repository.raise_(n, lam).items():
                    block[index[mu]][column] = self.ch_at(coeff, h_value)
            rows.extend(block)
        return rows

    def _kac_rows(self, r: int, s: int) -> List[List[LaurentPoly]]:
        matrix = self.kac_matrix(r * s)
        h_value = h_rs(r, s)
        return [[entry.evaluate(h_value) for entry in row] for row in matrix.entries]

    def singular_vector(self, r: int, s: int, method: Optional[str] = None) -> SingularVector:
        """
        Construct P_{r,s}(t) by exact kernel computation at h = h_{r,s}(t).

        Args:
            r: Positive integer
            s: Positive integer
            method: ``annihilator`` solves L_1 v = L_2 v = 0; ``kac`` takes the
                kernel of K_{rs}; defaults to the configured method

        Returns:
            SingularVector: Normalized so the L_{-1}^{rs} coefficient is 1

        Raises:
            InvariantViolation: If the kernel is not one-dimensional or a
                coefficient is not a Laurent polynomial in t
        """
        if r < 1 or s < 1:
            raise ValidationError(f"r and s must be positive, got ({r}, {s})")
        method = method or self.singular_method
        if method not in ("annihilator", "kac"):
            raise ValidationError(f"Unknown singular vector method: {method!r}", field="method")
        return self._singular.get_or_compute(
            (r, s, method), lambda: self._compute_singular(r, s, method)
        )

    def _compute_singular(self, r: int, s: int, method: str) -> SingularVector:
        basis = enumerate_partitions(r * s)
        rows = self._annihilator_rows(r, s) if method == "annihilator" else self._kac_rows(r, s)
        polynomial_rows = [
            [_laurent_to_t_ring(entry, shift) for entry in row]
            for row, shift in ((row, _row_shift(row)) for row in rows)
        ]
        kernel = fraction_free_kernel(polynomial_rows, len(basis), T_RING)
        if len(kernel) != 1:
            raise InvariantViolation(
                f"Kernel at h_{{{r},{s}}} has dimension {len(kernel)}",
                invariant="singular-kernel-dimension",
                details={"r": r, "s": s, "method": method},
            )
        vector = kernel[0]
        pivot = _t_ring_to_laurent(vector[-1])
        if not pivot.is_monomial():
            raise InvariantViolation(
                f"L_{{-1}}^{r * s} coefficient {pivot.to_text()} is not a monomial",
                invariant="laurent-coefficients",
                details={"r": r, "s": s},
            )
        scale = pivot.inverse_monomial()
        coefficients = {
            partition: (_t_ring_to_laurent(entry) * scale).require_even()
            for partition, entry in zip(basis, vector)
            if entry
        }
        logger.debug(
            "Singular vector constructed",
            extra={"r": r, "s": s, "method": method, "terms": len(coefficients)},
        )
        return SingularVector(r, s, coefficients)

    def singular_residual(self, vector: SingularVector) -> Dict[int, Dict[Partition, LaurentPoly]]:
        """L_1 v and L_2 v at (c(t), h_{r,s}(t)); both are empty for a singular vector."""
        h_value = h_rs(vector.r, vector.s)
        residual: Dict[int, Dict[Partition, LaurentPoly]] = {}
        for n in (1, 2):
            image: Dict[Partition, LaurentPoly] = {}
            for lam, coeff in vector.coefficients.items():
                for mu, ch in self.repository.raise_(n, lam).items():
                    image[mu] = image.get(mu, LaurentPoly()) + coeff * self.ch_at(ch, h_value)
            residual[n] = {mu: c for mu, c in image.items() if c}
        return residual

    def verify_singular(self, vector: SingularVector) -> CheckRecord:
        def body() -> Outcome:
            residual = self.singular_residual(vector)
            witness = [
                f"L_{n}: {mu} -> {coeff.to_text()}"
                for n, image in residual.items()
                for mu, coeff in image.items()
            ]
            return Outcome(
                passed=not witness,
                values={"vector": vector.to_text()},
                diff="; ".join(witness[:3]) or None,
            )

        return self.run_check(
            "verify-singular", f"r={vector.r},s={vector.s}", body, pair=(vector.r, vector.s)
        )

    def rs_symmetry_check(self, r: int, s: int) -> CheckRecord:
        """P_{r,s}(t) equals P_{s,r}(1/t)."""

        def body() -> Outcome:
            inverted = self.singular_vector(s, r).substitute_inverse()
            direct = self.singular_vector(r, s).coefficients
            mismatched = [str(p) for p in enumerate_partitions(r * s) if inverted.get(p) != direct.get(p)]
            return Outcome(
                passed=not mismatched,
                diff=f"coefficients differ at {', '.join(mismatched)}" if mismatched else None,
            )

        return self.run_check("rs-symmetry", f"r={r},s={s}", body, pair=(r, s))

    # -- norms of logarithmic primaries ---------------------------------------

    def norm_logprimary(self, r: int, s: int) -> HPoly:
        """N_{r,s}(t, h) = sum c_lambda c_mu K_{lambda,mu}(c(t), h)."""
        return self._norms.get_or_compute((r, s), lambda: self._compute_norm(r, s))

    def _compute_norm(self, r: int, s: int) -> HPoly:
        items = list(self.singular_vector(r, s).coefficients.items())
        total = HPoly()
        for mu, c_mu in items:
            inner = HPoly()
            for lam, c_lam in items:
                inner = inner + self.shapovalov(mu, lam) * c_lam
            total = total + inner * c_mu
        return total

    def norm_expansion(self, r: int, s: int) -> HPoly:
        """N_{r,s} re-expanded in delta = h - h_{r,s}(t)."""
        shifted = hpoly_shift(self.norm_logprimary(r, s), h_rs(r, s))
        if not shifted.coefficient(0).is_zero():
            raise InvariantViolation(
                f"N_{{{r},{s}}} does not vanish at h_{{{r},{s}}}(t)",
                invariant="norm-vanishes",
                details={"constant": shifted.coefficient(0).to_text()},
            )
        return shifted

    def extract_A(self, r: int, s: int) -> LaurentPoly:
        """A_{r,s}(t): the delta^1 coefficient of N_{r,s}."""
        return self.norm_expansion(r, s).coefficient(1).require_even()

    def theorem_main_check(self, max_level: int) -> List[CheckRecord]:
        """A_{r,s}(t) = R_{r,s}(t) for every rs <= max_level."""
        if max_level < 1:
            raise ValidationError("max_level must be positive", field="max_level")
        records = []
        for r, s in rs_pairs(max_level):

            def body(r: int = r, s: int = s) -> Outcome:
                a_value, r_value = self.extract_A(r, s), rrs_formula(r, s)
                return Outcome(
                    passed=a_value == r_value,
                    values={"A": a_value.to_text(), "R": r_value.to_text()},
                    diff=difference_text(a_value, r_value),
                    reference="2 prod (k t^{-1/2} + l t^{1/2})",
                )

            records.append(self.run_check("theorem-main", f"r={r},s={s}", body, pair=(r, s)))
        return records

    def one_row_formula_check(self, s: int) -> CheckRecord:
        def body() -> Outcome:
            a_value, expected = self.extract_A(1, s), one_row_formula(s)
            return Outcome(
                passed=a_value == expected,
                values={"A": a_value.to_text()},
                diff=difference_text(a_value, expected),
                reference="2 s! (s-1)! prod_{k<s} (k^2 t^2 - 1)",
            )

        return self.run_check("one-row-formula", f"r=1,s={s}", body, pair=(1, s))

    # -- structural properties ------------------------------------------------

    def leading_term_check(self, r: int, s: int) -> CheckRecord:
        """Extreme t-degrees of P_{r,s} sit on L_{-s}^r and L_{-r}^s only."""

        def body() -> Outcome:
            vector = self.singular_vector(r, s)
            top, bottom = r * (s - 1), -(r - 1) * s
            top_coeff = (-1) ** (r * (s - 1)) * factorial(s - 1) ** (2 * r)
            bottom_coeff = (-1) ** ((r - 1) * s) * factorial(r - 1) ** (2 * s)
            high = max(c.maxmin_deg()[0] for c in vector.coefficients.values())
            low = min(c.maxmin_deg()[1] for c in vector.coefficients.values())
            at_top = [p for p, c in vector.coefficients.items() if c.maxmin_deg()[0] == high]
            at_bottom = [p for p, c in vector.coefficients.items() if c.maxmin_deg()[1] == low]
            top_seen = vector.coefficient(rectangle(r, s)).t_coefficient(top)
            bottom_seen = vector.coefficient(rectangle(s, r)).t_coefficient(bottom)
            passed = (
                (high, low) == (top, bottom)
                and at_top == [rectangle(r, s)]
                and at_bottom == [rectangle(s, r)]
                and top_seen == top_coeff
                and bottom_seen == bottom_coeff
            )
            return Outcome(
                passed=passed,
                values={
                    "maxdeg": str(high),
                    "mindeg": str(low),
                    "top": format_rat(top_seen),
                    "bottom": format_rat(bottom_seen),
                },
                diff=None
                if passed
                else f"expected {top_coeff} t^{top} on {rectangle(r, s)} and "
                f"{bottom_coeff} t^{bottom} on {rectangle(s, r)}",
            )

        return self.run_check("leading-terms", f"r={r},s={s}", body, pair=(r, s))

    def t_negation_image(self, vector: SingularVector) -> Dict[Partition, LaurentPoly]:
        """Image under t -> -t, L_{-i} -> (-1)^{i-1} L_{-i} and word reversal."""
        image: Dict[Partition, LaurentPoly] = {}
        for lam, coeff in vector.coefficients.items():
            sign = (-1) ** sum(p - 1 for p in lam)
            mapped = coeff.negate_t().scale(sign)
            reversed_word = VirWord(tuple(-p for p in reversed(lam)))
            for mu, ch in self.repository.apply_word(reversed_word).items():
                image[mu] = image.get(mu, LaurentPoly()) + mapped * self.ch_at(ch, LaurentPoly())
        return {p: c for p, c in image.items() if c}

    def t_negation_check(self, r: int, s: int) -> CheckRecord:
        def body() -> Outcome:
            vector = self.singular_vector(r, s)
            image = self.t_negation_image(vector)
            moved = [
                str(p)
                for p in enumerate_partitions(r * s)
                if image.get(p, LaurentPoly()) != vector.coefficient(p)
            ]
            return Outcome(
                passed=not moved,
                diff=f"coefficients move at {', '.join(moved)}" if moved else None,
            )

        return self.run_check("t-negation", f"r={r},s={s}", body, pair=(r, s))

    def evenness_check(self, r: int, s: int) -> CheckRecord:
        def body() -> Outcome:
            a_value = self.extract_A(r, s)
            return Outcome(
                passed=a_value == a_value.negate_t(),
                values={"A": a_value.to_text()},
                diff=difference_text(a_value, a_value.negate_t()),
            )

        return self.run_check("evenness", f"r={r},s={s}", body, pair=(r, s))

    def degree_bound_check(self, r: int, s: int) -> CheckRecord:
        def body() -> Outcome:
            high, low = self.extract_A(r, s).maxmin_deg()
            upper, lower = 2 * r * (s - 1), -2 * (r - 1) * s
            passed = high <= upper and low >= lower
            return Outcome(
                passed=passed,
                values={"maxdeg": str(high), "mindeg": str(low)},
                diff=None if passed else f"bounds are [{lower}, {upper}]",
            )

        return self.run_check("degree-bounds", f"r={r},s={s}", body, pair=(r, s))

    def zero_set_check(self, r: int, s: int) -> CheckRecord:
        """A_{r,s} vanishes at t = -k/l for every factor k u^-1 + l u with kl != 0."""

        def body() -> Outcome:
            a_value = self.extract_A(r, s)
            roots = sorted(
                {
                    QQ(-k, l)
                    for k in range(1 - r, r + 1)
                    for l in range(1 - s, s + 1)
                    if k and l and (k, l) != (r, s)
                }
            )
            missed = [format_rat(t0) for t0 in roots if a_value.evaluate(t0)]
            return Outcome(
                passed=not missed,
                values={"roots": str(len(roots))},
                diff=f"nonzero at t = {', '.join(missed)}" if missed else None,
            )

        return self.run_check("zero-set", f"r={r},s={s}", body, pair=(r, s))

    def shapovalov_closed_form_check(self, r: int, s: int) -> CheckRecord:
        """<h| L_s^r L_{-s}^r |h> against its product formula in QQ[c, h]."""

        def body() -> Outcome:
            partition = rectangle(r, s)
            computed = self.repository.gram(partition, partition)
            expected = shapovalov_closed_form(r, s)
            return Outcome(
                passed=computed == expected,
                values={"value": str(computed.as_expr())},
                diff=None if computed == expected else str((computed - expected).as_expr()),
                reference="s^r r! prod_k [2h + s(k-1) + (s^2-1)c/12]",
            )

        return self.run_check("shapovalov-closed-form", f"r={r},s={s}", body, pair=(r, s))

    def shapovalov_degree_check(self, r: int, s: int) -> CheckRecord:
        """t-degrees of the delta^1 coefficient of the closed form at (c(t), h_{r,s}(t))."""

        def body() -> Outcome:
            closed = self.ch_to_hpoly(shapovalov_closed_form(r, s))
            e1 = hpoly_shift(closed, h_rs(r, s)).coefficient(1)
            high, low = e1.maxmin_deg()
            expected_low = 0 if r == s else 1 - r
            passed = high == 0 and low == expected_low
            return Outcome(
                passed=passed,
                values={"e1": e1.to_text(), "maxdeg": str(high), "mindeg": str(low)},
                diff=None if passed else f"expected degrees (0, {expected_low})",
            )

        return self.run_check("shapovalov-degrees", f"r={r},s={s}", body, pair=(r, s))

    # -- Gaiotto coefficients and the Virasoro-side recursion -----------------

    def gaiotto_coeff(self, level: int) -> RatFunc:
        """
        f_n = (K_n^{-1})_{(1^n),(1^n)} as a reduced rational function of (t, h).

        Args:
            level: n >= 0

        Returns:
            RatFunc: Element of QQ(t, h)
        """
        if level < 0:
            raise ValidationError(f"Level must be nonnegative, got {level}", field="level")
        return self._gaiotto.get_or_compute(level, lambda: self._compute_gaiotto(level))

    def _compute_gaiotto(self, level: int) -> RatFunc:
        if level == 0:
            return TH_FIELD.one
        matrix = self.kac_matrix(level)
        shifts = [_row_shift(row) for row in matrix.entries]
        scaled = [
            [_hpoly_to_th(entry, d) for entry in row] for row, d in zip(matrix.entries, shifts)
        ]
        last = matrix.size - 1
        det = bareiss_det(scaled, TH_RING.one)
        if not det:
            raise InvariantViolation("Kac determinant vanishes identically", invariant="kac-det")
        cofactor = bareiss_det(minor(scaled, last, last), TH_RING.one)
        return TH_FIELD.new(cofactor * TH_T ** shifts[last], det)

    def gaiotto_value(self, level: int, t0: RatLike, h0: RatLike) -> BigRat:
        """
        Exact value of f_n at a rational point.

        Raises:
            PoleCollisionError: If K_n(t0, h0) is singular or t0 = 0
        """
        t0, h0 = to_rat(t0), to_rat(h0)
        return self._gaiotto_values.get_or_compute(
            (level, t0, h0), lambda: self._compute_gaiotto_value(level, t0, h0)
        )

    def _compute_gaiotto_value(self, level: int, t0: BigRat, h0: BigRat) -> BigRat:
        if level == 0:
            return QQ(1)
        if not t0:
            raise PoleCollisionError(offender="t = 0")
        matrix = self.kac_matrix(level)
        values = [[entry.evaluate_at(t0, h0) for entry in row] for row in matrix.entries]
        last = matrix.size - 1
        rhs = [[QQ(1) if i == last else QQ(0)] for i in range(matrix.size)]
        try:
            solution = solve_field(values, rhs)
        except DivisionByZeroError as exc:
            raise PoleCollisionError(
                offender=f"K_{level} at (t, h) = ({format_rat(t0)}, {format_rat(h0)})"
            ) from exc
        return solution[last][0]

    def recursion_rhs(self, level: int, t0: BigRat, h0: BigRat) -> BigRat:
        """delta_{n,0} + sum_{rs<=n} A_{r,s}(t0)^-1 f_{n-rs}(t0, h_{r,s}(t0)+rs) / (h0 - h_{r,s}(t0))."""
        total = QQ(1) if level == 0 else QQ(0)
        for r, s in rs_pairs(level):
            pole = h_rs(r, s).evaluate(t0)
            a_value = self.extract_A(r, s).evaluate(t0)
            if h0 == pole:
                raise PoleCollisionError(offender=f"h = h_{{{r},{s}}}({format_rat(t0)})")
            if not a_value:
                raise PoleCollisionError(offender=f"A_{{{r},{s}}}({format_rat(t0)}) = 0")
            shifted = self.gaiotto_value(level - r * s, t0, pole + r * s)
            total += shifted / (a_value * (h0 - pole))
        return total

    def virasoro_recursion_check(
        self, max_level: int, sample_points: Sequence[Tuple[BigRat, BigRat]]
    ) -> List[CheckRecord]:
        records = []
        for level in range(max_level + 1):
            for t0, h0 in sample_points:

                def body(level: int = level, t0: BigRat = t0, h0: BigRat = h0) -> Outcome:
                    lhs = self.gaiotto_value(level, t0, h0)
                    rhs = self.recursion_rhs(level, t0, h0)
                    return Outcome(
                        passed=lhs == rhs,
                        values={"f": format_rat(lhs), "rhs": format_rat(rhs)},
                        diff=None if lhs == rhs else format_rat(lhs - rhs),
                    )

                identifier = f"n={level},t={format_rat(t0)},h={format_rat(h0)}"
                records.append(self.run_check("virasoro-recursion", identifier, body))
        return records

    def gaiotto_consistency_check(
        self, max_level: int, sample_points: Sequence[Tuple[BigRat, BigRat]]
    ) -> List[CheckRecord]:
        """The symbolic f_n evaluated at a point agrees with the pointwise solve."""
        records = []
        for level in range(1, max_level + 1):
            for t0, h0 in sample_points:

                def body(level: int = level, t0: BigRat = t0, h0: BigRat = h0) -> Outcome:
                    symbolic = evaluate_ratfunc(self.gaiotto_coeff(level), {"t": t0, "h": h0})
                    pointwise = self.gaiotto_value(level, t0, h0)
                    return Outcome(
                        passed=symbolic == pointwise,
                        values={"f": format_rat(pointwise)},
                        diff=None if symbolic == pointwise else format_rat(symbolic - pointwise),
                    )

                identifier = f"n={level},t={format_rat(t0)},h={format_rat(h0)}"
                records.append(self.run_check("gaiotto-consistency", identifier, body))
        return records

    # -- tables ---------------------------------------------------------------

    def norm_latex(self, r: int, s: int) -> str:
        """N_{r,s}(t,h) in powers of (h - h_{r,s}(t)) as one aligned LaTeX line."""
        pieces = []
        for k, coeff in self.norm_expansion(r, s).items():
            delta = f"(h-h_{{{r},{s}}}(t))" + (f"^{{{k}}}" if k > 1 else "")
            text = coeff.to_latex()
            pieces.append(f"\\left({text}\\right){delta}" if " " in text else f"{text}{delta}")
        return f"N_{{{r},{s}}}(t,h) &= " + " + ".join(pieces) + r" \\"

    def norm_table_latex(self, max_level: int) -> List[str]:
        return [self.norm_latex(r, s) for r, s in rs_pairs(max_level)]
