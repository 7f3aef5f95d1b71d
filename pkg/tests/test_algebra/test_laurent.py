"""
Tests for Laurent polynomials in u = t^{1/2}.

Covers canonical text forms, exact division, substitutions and the ring laws
through hypothesis-generated operands.
"""
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import QQ

from virnorm.algebra.laurent import LaurentPoly, c_of_t, h_rs, laurent_product
from virnorm.algebra.unipoly import HPoly
from virnorm.core.exceptions import (
    DivisionByZeroError,
    InvariantViolation,
    UndefinedDegreeError,
    ValidationError,
)

coefficients = st.fractions(min_value=-20, max_value=20, max_denominator=6)
laurent_polys = st.dictionaries(
    st.integers(min_value=-6, max_value=6), coefficients, max_size=5
).map(
    lambda terms: LaurentPoly.from_terms(
        {k: QQ(c.numerator, c.denominator) for k, c in terms.items()}
    )
)


@pytest.mark.unit
@pytest.mark.algebra
class TestLaurentConstruction:
    """Construction, inspection and canonical text."""

    def test_central_charge_text(self):
        """c(t) prints with descending exponents."""
        assert c_of_t().to_text() == "-6 t + 13 - 6 t^-1", "c(t) should read -6t + 13 - 6/t"

    def test_h_rs_values(self):
        """h_{1,1} = 0 and h_{1,2} = (3t - 2)/4."""
        assert h_rs(1, 1).is_zero(), "h_{1,1}(t) should vanish identically"
        expected = LaurentPoly.from_t_terms({1: QQ(3, 4), 0: QQ(-1, 2)})
        assert h_rs(1, 2) == expected, "h_{1,2}(t) should equal 3t/4 - 1/2"

    def test_h_rs_inversion_symmetry(self):
        """h_{r,s}(1/t) = h_{s,r}(t)."""
        for r, s in [(1, 2), (2, 3), (1, 4)]:
            assert h_rs(r, s).substitute_inverse() == h_rs(s, r), f"symmetry fails at ({r}, {s})"

    def test_half_powers_render_as_fractions(self):
        """Odd u-exponents render as t^{k/2}."""
        value = LaurentPoly.from_terms({1: 2, -1: -1})
        assert value.to_text() == "2 t^{1/2} - t^{-1/2}"
        assert not value.is_even(), "half powers are not in QQ[t, 1/t]"

    def test_maxmin_degree_in_t_units(self):
        """Degrees are reported in t on even supports."""
        assert c_of_t().maxmin_deg() == (1, -1)

    def test_degree_of_zero_is_undefined(self):
        """The zero polynomial has no degree."""
        with pytest.raises(UndefinedDegreeError):
            LaurentPoly.zero().maxmin_deg()

    def test_json_form(self):
        """JSON lists (u_exponent, [num, den]) pairs from the top exponent down."""
        value = LaurentPoly.from_t_terms({1: QQ(1, 2), -1: -3})
        assert value.to_json() == [[2, [1, 2]], [-2, [-3, 1]]]
        assert LaurentPoly.from_json(value.to_json()) == value


@pytest.mark.unit
@pytest.mark.algebra
class TestLaurentParsing:
    """Parsing the canonical text form back."""

    @pytest.mark.parametrize(
        "text",
        ["0", "1", "-6 t + 13 - 6 t^-1", "t^2 - 2 + t^-2", "1/2 t^{3/2} - 4 t^{-1/2}", "-t"],
    )
    def test_parse_reads_canonical_text(self, text):
        """Canonical text parses back to a value with the same text."""
        assert LaurentPoly.parse(text).to_text() == text, f"{text!r} should survive parsing"

    def test_parse_accepts_braced_exponents(self):
        """t^{2} and t^2 mean the same monomial."""
        assert LaurentPoly.parse("t^{2}") == LaurentPoly.t(2)

    @pytest.mark.edge_cases
    @pytest.mark.parametrize("text", ["t^", "2 x", "3 t^a"])
    def test_parse_rejects_malformed_terms(self, text):
        """Garbage is a validation error, not a silent zero."""
        with pytest.raises(ValidationError):
            LaurentPoly.parse(text)


@pytest.mark.unit
@pytest.mark.algebra
class TestLaurentArithmetic:
    """Division, substitution and evaluation."""

    def test_exact_division(self):
        """(t^2 - 1) / (t - 1) = t + 1."""
        numerator = LaurentPoly.from_t_terms({2: 1, 0: -1})
        denominator = LaurentPoly.from_t_terms({1: 1, 0: -1})
        assert numerator.exquo(denominator) == LaurentPoly.from_t_terms({1: 1, 0: 1})

    def test_inexact_division_is_an_invariant_violation(self):
        """A nonzero remainder is reported, never rounded."""
        with pytest.raises(InvariantViolation):
            LaurentPoly.from_t_terms({2: 1, 0: 1}).exquo(LaurentPoly.from_t_terms({1: 1, 0: -1}))

    def test_division_by_zero(self):
        """Dividing by the zero polynomial raises."""
        with pytest.raises(DivisionByZeroError):
            LaurentPoly.one().exquo(LaurentPoly.zero())

    def test_only_monomials_are_units(self):
        """1 + t has no inverse in the Laurent ring."""
        assert LaurentPoly.monomial(QQ(2), 4).inverse_monomial() == LaurentPoly.monomial(
            QQ(1, 2), -4
        )
        with pytest.raises(DivisionByZeroError):
            LaurentPoly.from_t_terms({1: 1, 0: 1}).inverse_monomial()

    def test_negate_t(self):
        """t -> -t flips the odd t-powers."""
        assert c_of_t().negate_t() == LaurentPoly.from_t_terms({1: 6, 0: 13, -1: 6})

    def test_negate_t_needs_even_support(self):
        """t -> -t is not defined on half powers."""
        with pytest.raises(InvariantViolation):
            LaurentPoly.u().negate_t()

    def test_evaluate_at_rational(self):
        """c(2) = 13 - 12 - 3 = -2."""
        assert c_of_t().evaluate(2) == QQ(-2)

    def test_evaluate_half_powers_at_square(self):
        """u at t = 9/4 is 3/2; a non-square t is rejected."""
        assert LaurentPoly.u().evaluate(QQ(9, 4)) == QQ(3, 2)
        with pytest.raises(ValidationError):
            LaurentPoly.u().evaluate(2)

    @pytest.mark.edge_cases
    def test_evaluate_negative_power_at_zero(self):
        """t^-1 has a pole at t = 0."""
        with pytest.raises(DivisionByZeroError):
            LaurentPoly.t(-1).evaluate(0)

    def test_product_helper(self):
        """laurent_product of no factors is one."""
        assert laurent_product([]) == LaurentPoly.one()
        assert laurent_product([LaurentPoly.t(), LaurentPoly.t(-1)]) == LaurentPoly.one()


@pytest.mark.unit
@pytest.mark.algebra
class TestLaurentRingLaws:
    """Ring axioms on generated operands."""

    @settings(max_examples=60, deadline=None)
    @given(laurent_polys, laurent_polys, laurent_polys)
    def test_distributivity(self, p, q, r):
        """p (q + r) = p q + p r."""
        assert p * (q + r) == p * q + p * r

    @settings(max_examples=60, deadline=None)
    @given(laurent_polys, laurent_polys)
    def test_commutativity_and_subtraction(self, p, q):
        """p q = q p and (p + q) - q = p."""
        assert p * q == q * p
        assert (p + q) - q == p

    @settings(max_examples=60, deadline=None)
    @given(laurent_polys)
    def test_text_round_trip(self, p):
        """parse(to_text(p)) = p."""
        assert LaurentPoly.parse(p.to_text()) == p

    @settings(max_examples=60, deadline=None)
    @given(laurent_polys, laurent_polys)
    def test_evaluation_is_a_homomorphism(self, p, q):
        """Evaluation at u = 3/2 respects products."""
        u0 = QQ(3, 2)
        assert (p * q).evaluate_u(u0) == p.evaluate_u(u0) * q.evaluate_u(u0)

    @settings(max_examples=60, deadline=None)
    @given(laurent_polys)
    def test_inversion_is_an_involution(self, p):
        """t -> 1/t applied twice is the identity."""
        assert p.substitute_inverse().substitute_inverse() == p

    @settings(max_examples=40, deadline=None)
    @given(st.lists(laurent_polys, max_size=4))
    def test_h_polynomials_survive_json(self, coeffs):
        """HPoly.from_json inverts to_json through a JSON string."""
        poly = HPoly(coeffs)
        assert HPoly.from_json(json.loads(json.dumps(poly.to_json()))) == poly
