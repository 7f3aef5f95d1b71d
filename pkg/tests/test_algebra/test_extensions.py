"""
Tests for the quadratic extensions, rational function fields and exact linear algebra.
"""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import QQ
from sympy.polys.rings import ring

from virnorm.algebra.laurent import LaurentPoly
from virnorm.algebra.linalg import bareiss_det, fraction_free_kernel, inverse_field, solve_field
from virnorm.algebra.quadratic import QuadraticSurd, Sqrt2Ext
from virnorm.algebra.rational import format_rat, parse_rat, rational_sqrt, to_rat
from virnorm.algebra.ratfunc import (
    evaluate_ratfunc,
    is_reduced,
    laurent_to_ratfunc,
    ratfunc_arith,
    ratfunc_field,
    ratfunc_to_laurent,
)
from virnorm.algebra.unipoly import HPoly, hpoly_shift
from virnorm.core.exceptions import (
    DivisionByZeroError,
    InvariantViolation,
    PoleCollisionError,
    ValidationError,
)

small_rationals = st.builds(
    lambda n, d: QQ(n, d), st.integers(min_value=-30, max_value=30), st.integers(1, 9)
)


@pytest.mark.unit
@pytest.mark.algebra
class TestRationals:
    """Parsing and formatting of exact rationals."""

    def test_parse_and_format(self):
        """'6/4' reduces to 3/2 and prints back reduced."""
        assert format_rat(parse_rat("6/4")) == "3/2"
        assert format_rat(to_rat(-4)) == "-4"

    @pytest.mark.edge_cases
    @pytest.mark.parametrize("text", ["1/0", "abc", "1.5"])
    def test_parse_rejects_bad_input(self, text):
        """Zero denominators and decimals are rejected."""
        with pytest.raises(ValidationError):
            parse_rat(text)

    def test_booleans_are_not_rationals(self):
        """True is not silently read as 1."""
        with pytest.raises(ValidationError):
            to_rat(True)

    def test_rational_sqrt(self):
        """Exact roots of rational squares only."""
        assert rational_sqrt(QQ(49, 25)) == QQ(7, 5)
        assert rational_sqrt(QQ(2)) is None
        assert rational_sqrt(QQ(-4)) is None


@pytest.mark.unit
@pytest.mark.algebra
class TestSqrt2Ext:
    """Laurent polynomials with sqrt(2) adjoined."""

    def test_sqrt2_squares_to_two(self):
        """(sqrt 2)^2 = 2 and (1/sqrt 2)^2 = 1/2."""
        root = Sqrt2Ext(0, 1)
        assert root * root == Sqrt2Ext(2)
        assert Sqrt2Ext.inv_sqrt2() ** 2 == Sqrt2Ext(QQ(1, 2))

    def test_radical_part_tracks_rationality(self):
        """Only values with a vanishing sqrt(2) part are rational."""
        assert Sqrt2Ext(LaurentPoly.t()).is_rational()
        assert not Sqrt2Ext(0, LaurentPoly.t()).is_rational()

    def test_mixed_arithmetic_with_laurent(self):
        """Laurent values coerce into the extension."""
        value = Sqrt2Ext(1, 1) + LaurentPoly.t()
        assert value.rational_part == LaurentPoly.from_t_terms({1: 1, 0: 1})
        assert value.radical_part == LaurentPoly.one()


@pytest.mark.unit
@pytest.mark.algebra
class TestQuadraticSurd:
    """Elements of QQ(sqrt d)."""

    def test_sqrt_of_square_is_rejected(self):
        """A rational square must use its rational root."""
        with pytest.raises(ValidationError):
            QuadraticSurd.sqrt(QQ(9, 4))

    def test_square_and_inverse(self):
        """sqrt(3)^2 = 3 and (1 + sqrt 3)(1 + sqrt 3)^-1 = 1."""
        root = QuadraticSurd.sqrt(3)
        assert (root * root).rational_value() == QQ(3)
        value = root + 1
        assert value * value.inverse() == QuadraticSurd(1, 0, 3)

    def test_rational_value_requires_cancellation(self):
        """sqrt(3) itself has no rational value."""
        with pytest.raises(InvariantViolation):
            QuadraticSurd.sqrt(3).rational_value()

    def test_zero_has_no_inverse(self):
        """Inverting zero raises."""
        with pytest.raises(DivisionByZeroError):
            QuadraticSurd(0, 0, 5).inverse()

    @settings(max_examples=50, deadline=None)
    @given(small_rationals, small_rationals, small_rationals)
    def test_field_laws(self, x, y, z):
        """Distributivity in QQ(sqrt 5)."""
        a = QuadraticSurd(x, y, 5)
        b = QuadraticSurd(y, z, 5)
        c = QuadraticSurd(z, x, 5)
        assert a * (b + c) == a * b + a * c


@pytest.mark.unit
@pytest.mark.algebra
class TestRatFunc:
    """Reduced rational functions and exact evaluation."""

    def test_fields_are_shared(self):
        """Equal variable names give the same field object."""
        assert ratfunc_field(("t", "h"))[0] is ratfunc_field(("t", "h"))[0]

    @pytest.mark.edge_cases
    def test_unsupported_or_repeated_names(self):
        """Only the toolkit's variables are allowed, each once."""
        with pytest.raises(ValidationError):
            ratfunc_field(("x",))
        with pytest.raises(ValidationError):
            ratfunc_field(("t", "t"))

    def test_results_are_reduced(self):
        """(t^2 - 1) / (t - 1) cancels to t + 1."""
        _, (t,) = ratfunc_field(("t",))
        value = ratfunc_arith(t**2 - 1, t - 1, "div")
        assert value == t + 1
        assert is_reduced(value), "sympy should cancel the common factor"

    def test_division_by_zero(self):
        """Dividing by the zero function raises."""
        _, (t,) = ratfunc_field(("t",))
        with pytest.raises(DivisionByZeroError):
            ratfunc_arith(t, t * 0, "div")

    def test_evaluate_at_rationals_and_surds(self):
        """a^2 / (a + 1) evaluates exactly at a surd and at a rational."""
        _, (a,) = ratfunc_field(("a",))
        value = evaluate_ratfunc(a**2 / (a + 1), {"a": QuadraticSurd.sqrt(2)})
        # 2 / (1 + sqrt 2) = 2 (sqrt 2 - 1)
        assert value == QuadraticSurd(-2, 2, 2)
        assert evaluate_ratfunc(a**2 / (a + 1), {"a": QQ(3)}) == QQ(9, 4)

    def test_evaluate_at_pole(self):
        """A vanishing denominator is a pole collision."""
        _, (t, h) = ratfunc_field(("t", "h"))
        with pytest.raises(PoleCollisionError):
            evaluate_ratfunc(1 / (t - h), {"t": QQ(2), "h": QQ(2)})

    def test_evaluate_needs_every_variable(self):
        """Missing variables are a validation error."""
        _, (t, h) = ratfunc_field(("t", "h"))
        with pytest.raises(ValidationError):
            evaluate_ratfunc(t + h, {"t": QQ(1)})

    def test_laurent_round_trip(self):
        """Laurent polynomials in t embed and come back unchanged."""
        _, (t,) = ratfunc_field(("t",))
        value = LaurentPoly.from_t_terms({2: 3, 0: -1, -2: QQ(1, 2)})
        assert ratfunc_to_laurent(laurent_to_ratfunc(value, t)) == value

    def test_non_monomial_denominator_is_not_laurent(self):
        """1 / (t + 1) is not a Laurent polynomial."""
        _, (t,) = ratfunc_field(("t",))
        with pytest.raises(InvariantViolation):
            ratfunc_to_laurent(1 / (t + 1))


@pytest.mark.unit
@pytest.mark.algebra
class TestLinearAlgebra:
    """Bareiss determinants, kernels and field solves."""

    def test_bareiss_matches_cofactor_expansion(self):
        """det [[x, 1], [1, x]] = x^2 - 1 over QQ[x]."""
        x_ring, x = ring("x", QQ)
        assert bareiss_det([[x, x_ring.one], [x_ring.one, x]], x_ring.one) == x**2 - 1

    def test_bareiss_with_pivot_swap(self):
        """A zero leading entry swaps rows and flips the sign."""
        x_ring, x = ring("x", QQ)
        matrix = [[x_ring.zero, x_ring.one], [x_ring.one, x]]
        assert bareiss_det(matrix, x_ring.one) == -x_ring.one

    def test_empty_determinant_is_one(self):
        x_ring, _ = ring("x", QQ)
        assert bareiss_det([], x_ring.one) == x_ring.one

    def test_kernel_is_one_dimensional(self):
        """The kernel of [[x, -1]] is spanned by (1, x)."""
        x_ring, x = ring("x", QQ)
        kernel = fraction_free_kernel([[x, -x_ring.one]], 2, x_ring)
        assert len(kernel) == 1
        first, second = kernel[0]
        assert second == first * x, "kernel vector should be proportional to (1, x)"

    def test_solve_and_inverse(self):
        """[[2, 1], [1, 1]]^-1 = [[1, -1], [-1, 2]]."""
        matrix = [[QQ(2), QQ(1)], [QQ(1), QQ(1)]]
        assert inverse_field(matrix) == [[QQ(1), QQ(-1)], [QQ(-1), QQ(2)]]
        assert solve_field(matrix, [[QQ(3)], [QQ(2)]]) == [[QQ(1)], [QQ(1)]]

    def test_singular_solve(self):
        """A singular system raises instead of guessing."""
        with pytest.raises(DivisionByZeroError):
            solve_field([[QQ(1), QQ(2)], [QQ(2), QQ(4)]], [[QQ(1)], [QQ(0)]])


@pytest.mark.unit
@pytest.mark.algebra
class TestHPoly:
    """Polynomials in h with Laurent coefficients."""

    def test_shift_round_trip(self):
        """Re-expanding around a center and back returns the original."""
        p = HPoly([LaurentPoly.t(), 3, LaurentPoly.t(-1)])
        center = LaurentPoly.from_t_terms({1: 2, 0: -1})
        assert hpoly_shift(hpoly_shift(p, center), -center) == p

    def test_evaluate_at_point(self):
        """(t + 3h + h^2/t) at (t, h) = (2, 1) is 2 + 3 + 1/2."""
        p = HPoly([LaurentPoly.t(), 3, LaurentPoly.t(-1)])
        assert p.evaluate_at(QQ(2), QQ(1)) == QQ(11, 2)
