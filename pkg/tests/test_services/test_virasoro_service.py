"""
Tests for the Verma module service.

Golden values: the Gram matrices at levels 1-3, the first singular vectors and
the first-order coefficients A_{r,s}(t) of the logarithmic-primary norms.
"""
import pytest
from sympy import QQ

from virnorm.algebra.laurent import LaurentPoly, c_of_t
from virnorm.algebra.ratfunc import ratfunc_field
from virnorm.algebra.unipoly import HPoly
from virnorm.core.exceptions import ValidationError
from virnorm.models.partition import Partition
from virnorm.models.verma import VirWord
from virnorm.repositories.verma_repository import C, H
from virnorm.schemas.report import CheckStatus
from virnorm.services.base import rs_pairs
from virnorm.services.virasoro_service import (
    VirasoroService,
    one_row_formula,
    rrs_formula,
)

P = Partition


def laurent_t(terms):
    return LaurentPoly.from_t_terms(terms)


@pytest.mark.unit
@pytest.mark.virasoro
@pytest.mark.golden
class TestKacMatrices:
    """Gram matrices of the contravariant form."""

    def test_level_one(self, virasoro_service: VirasoroService):
        """K_1 = (2h)."""
        matrix = virasoro_service.kac_matrix(1)
        assert matrix.entries == ((HPoly([0, 2]),),), "K_1 should be 2h"

    def test_level_two_at_central_charge(self, virasoro_service: VirasoroService):
        """K_2 = [[4h + c/2, 6h], [6h, 8h^2 + 4h]] with c = c(t)."""
        matrix = virasoro_service.kac_matrix(2)
        assert matrix.partitions == (P((2,)), P((1, 1)))
        assert matrix.entry(P((2,)), P((2,))) == HPoly([c_of_t().scale(QQ(1, 2)), 4])
        assert matrix.entry(P((2,)), P((1, 1))) == HPoly([0, 6])
        assert matrix.entry(P((1, 1)), P((1, 1))) == HPoly([0, 4, 8])
        assert matrix.is_symmetric(), "the contravariant form is symmetric"

    def test_level_three_over_c_and_h(self, virasoro_service: VirasoroService):
        """K_3 in QQ[c, h] before substituting c(t)."""
        gram = virasoro_service.repository.gram
        assert gram(P((3,)), P((3,))) == 6 * H + 2 * C
        assert gram(P((2, 1)), P((3,))) == 10 * H
        assert gram(P((1, 1, 1)), P((3,))) == 24 * H
        assert gram(P((2, 1)), P((2, 1))) == 8 * H**2 + 8 * H + C * H
        assert gram(P((1, 1, 1)), P((2, 1))) == 12 * H * (3 * H + 1)
        assert gram(P((1, 1, 1)), P((1, 1, 1))) == 24 * H * (H + 1) * (2 * H + 1)

    def test_different_levels_pair_to_zero(self, virasoro_service: VirasoroService):
        assert virasoro_service.shapovalov(P((2,)), P((1,))).is_zero()

    @pytest.mark.edge_cases
    def test_negative_level(self, virasoro_service: VirasoroService):
        with pytest.raises(ValidationError):
            virasoro_service.kac_matrix(-1)


@pytest.mark.unit
@pytest.mark.virasoro
class TestNormalOrdering:
    """Words L_{n_1} ... L_{n_k} applied to the highest-weight vector."""

    def test_l1_after_l_minus_1(self, virasoro_service: VirasoroService):
        """L_1 L_{-1}|h> = 2h|h>."""
        result = virasoro_service.normal_order_apply(VirWord((1, -1)), 0)
        assert result == {P(): HPoly([0, 2])}

    def test_l2_after_l_minus_2(self, virasoro_service: VirasoroService):
        """L_2 L_{-2}|h> = (4h + c/2)|h>."""
        result = virasoro_service.normal_order_apply(VirWord((2, -2)), 0)
        assert result == {P(): HPoly([c_of_t().scale(QQ(1, 2)), 4])}

    def test_commutator_lowers_the_level(self, virasoro_service: VirasoroService):
        """L_1 L_{-2}|h> = 3 L_{-1}|h>."""
        assert virasoro_service.normal_order_apply(VirWord((1, -2)), 1) == {P((1,)): HPoly([3])}

    def test_reordering_into_the_pbw_basis(self, virasoro_service: VirasoroService):
        """L_{-1} L_{-2} = L_{-2} L_{-1} + L_{-3}."""
        result = virasoro_service.normal_order_apply(VirWord((-1, -2)), 3)
        assert result == {P((2, 1)): HPoly([1]), P((3,)): HPoly([1])}

    def test_agrees_with_the_gram_entry(self, virasoro_service: VirasoroService):
        """L_2 L_{-1}^2|h> = 6h|h>, the off-diagonal entry of K_2."""
        result = virasoro_service.normal_order_apply(VirWord((2, -1, -1)), 0)
        assert result == {P(): virasoro_service.kac_matrix(2).entry(P((2,)), P((1, 1)))}

    @pytest.mark.edge_cases
    def test_level_cap_and_annihilation(self, virasoro_service: VirasoroService):
        assert virasoro_service.normal_order_apply(VirWord((-1, -1)), 1) == {}
        assert virasoro_service.normal_order_apply(VirWord((1,)), 3) == {}, "L_1|h> = 0"

    @pytest.mark.edge_cases
    @pytest.mark.parametrize("text", ["2,0", "2,x"])
    def test_malformed_words(self, text):
        with pytest.raises(ValidationError):
            VirWord.parse(text)


@pytest.mark.virasoro
class TestKacDeterminant:
    """Factorization of det K_n over the curves h = h_{r,s}(t)."""

    @pytest.mark.unit
    @pytest.mark.parametrize("level", [1, 2, 3, 4])
    def test_factorization(self, virasoro_service: VirasoroService, level):
        record = virasoro_service.kac_det_check(level)
        assert record.status == CheckStatus.PASS, record.diff

    @pytest.mark.slow
    @pytest.mark.parametrize("level", [5, 6])
    def test_factorization_high_levels(self, virasoro_service: VirasoroService, level):
        record = virasoro_service.kac_det_check(level)
        assert record.status == CheckStatus.PASS, record.diff

    def test_prefactor_and_exponents(self, virasoro_service: VirasoroService):
        """Level 2: prefactor 2*2 * 4*2 = 32 and one factor per (r, s)."""
        prefactor, exponents = virasoro_service.kac_det_factors(2)
        assert prefactor == 32
        assert exponents == [(1, 1, 1), (1, 2, 1), (2, 1, 1)]

    @pytest.mark.edge_cases
    def test_level_zero_is_rejected(self, virasoro_service: VirasoroService):
        with pytest.raises(ValidationError):
            virasoro_service.kac_det_check(0)


@pytest.mark.unit
@pytest.mark.virasoro
@pytest.mark.golden
class TestSingularVectors:
    """P_{r,s}(t) normalized by the L_{-1}^{rs} coefficient."""

    def test_p12_text(self, virasoro_service: VirasoroService):
        """P_{1,2} = L_{-1}^2 - t L_{-2}."""
        vector = virasoro_service.singular_vector(1, 2)
        assert vector.to_text() == "L_{-1}^2 - t L_{-2}"
        assert vector.to_latex() == "L_{-1}^2 - t L_{-2}"

    def test_p21_is_the_inverted_partner(self, virasoro_service: VirasoroService):
        """P_{2,1} = L_{-1}^2 - t^-1 L_{-2}."""
        vector = virasoro_service.singular_vector(2, 1)
        assert vector.coefficient(P((2,))) == LaurentPoly.t(-1).scale(-1)

    def test_p13(self, virasoro_service: VirasoroService):
        """P_{1,3} = L_{-1}^3 - 4t L_{-2}L_{-1} + 2t(2t - 1) L_{-3}."""
        vector = virasoro_service.singular_vector(1, 3)
        assert vector.coefficient(P((1, 1, 1))) == LaurentPoly.one()
        assert vector.coefficient(P((2, 1))) == laurent_t({1: -4})
        assert vector.coefficient(P((3,))) == laurent_t({2: 4, 1: -2})

    def test_p11(self, virasoro_service: VirasoroService):
        """P_{1,1} = L_{-1}."""
        assert virasoro_service.singular_vector(1, 1).coefficients == {P((1,)): LaurentPoly.one()}

    @pytest.mark.parametrize("r,s", rs_pairs(4))
    def test_annihilated_by_positive_modes(self, virasoro_service: VirasoroService, r, s):
        record = virasoro_service.verify_singular(virasoro_service.singular_vector(r, s))
        assert record.status == CheckStatus.PASS, record.diff

    @pytest.mark.parametrize("r,s", [(1, 2), (2, 2), (1, 4)])
    def test_kernel_methods_agree(self, r, s):
        """The Kac-matrix kernel and the annihilator system give the same vector."""
        annihilator = VirasoroService(singular_method="annihilator").singular_vector(r, s)
        kac = VirasoroService(singular_method="kac").singular_vector(r, s)
        assert annihilator.coefficients == kac.coefficients

    @pytest.mark.edge_cases
    def test_invalid_inputs(self, virasoro_service: VirasoroService):
        with pytest.raises(ValidationError):
            virasoro_service.singular_vector(0, 2)
        with pytest.raises(ValidationError):
            virasoro_service.singular_vector(1, 2, method="gauss")

    @pytest.mark.negative_control
    def test_perturbed_vector_fails_verification(self, virasoro_service: VirasoroService):
        """Changing one coefficient of P_{1,2} breaks L_1 v = 0."""
        vector = virasoro_service.singular_vector(1, 2)
        broken = vector.with_coefficients(
            {P((1, 1)): LaurentPoly.one(), P((2,)): laurent_t({1: -1, 0: 1})}
        )
        record = virasoro_service.verify_singular(broken)
        assert record.status == CheckStatus.FAIL, "a wrong vector must not verify"
        assert record.diff, "the failure should carry a witness"


@pytest.mark.virasoro
@pytest.mark.golden
class TestLogarithmicPrimaryNorms:
    """A_{r,s}(t) against the closed product R_{r,s}(t)."""

    @pytest.mark.unit
    def test_a11_is_two(self, virasoro_service: VirasoroService):
        assert virasoro_service.extract_A(1, 1) == LaurentPoly.constant(2)
        assert rrs_formula(1, 1) == LaurentPoly.constant(2)

    @pytest.mark.unit
    def test_a12(self, virasoro_service: VirasoroService):
        """A_{1,2} = 4(t^2 - 1)."""
        assert virasoro_service.extract_A(1, 2) == laurent_t({2: 4, 0: -4})

    @pytest.mark.unit
    def test_a13(self, virasoro_service: VirasoroService):
        """A_{1,3} = 24 (t^2 - 1)(4 t^2 - 1)."""
        expected = laurent_t({2: 1, 0: -1}) * laurent_t({2: 4, 0: -1}) * 24
        assert virasoro_service.extract_A(1, 3) == expected
        assert one_row_formula(3) == expected

    @pytest.mark.unit
    def test_norm_vanishes_to_first_order(self, virasoro_service: VirasoroService):
        """N_{1,1} = 2 (h - h_{1,1}); the delta^0 coefficient is zero."""
        expansion = virasoro_service.norm_expansion(1, 1)
        assert expansion.coefficient(0).is_zero()
        assert expansion.coefficient(1) == LaurentPoly.constant(2)

    @pytest.mark.unit
    def test_theorem_main_small(self, virasoro_service: VirasoroService):
        """A = R for every rs <= 4."""
        records = virasoro_service.theorem_main_check(4)
        assert [r.pair for r in records] == [list(p) for p in rs_pairs(4)]
        failing = [r.identifier for r in records if r.status != CheckStatus.PASS]
        assert not failing, f"theorem-main failed at {failing}"

    @pytest.mark.slow
    def test_theorem_main_to_level_eight(self, virasoro_service: VirasoroService):
        """All twenty pairs with rs <= 8."""
        records = virasoro_service.theorem_main_check(8)
        assert len(records) == 20
        failing = [r.identifier for r in records if r.status != CheckStatus.PASS]
        assert not failing, f"theorem-main failed at {failing}"

    @pytest.mark.unit
    def test_norm_latex_line(self, virasoro_service: VirasoroService):
        assert virasoro_service.norm_latex(1, 1) == r"N_{1,1}(t,h) &= 2(h-h_{1,1}(t)) \\"
        assert len(virasoro_service.norm_table_latex(2)) == 3

    @pytest.mark.negative_control
    def test_transposed_pair_does_not_match(self, virasoro_service: VirasoroService):
        """A_{1,2} differs from R_{2,1}; the comparison is not vacuous."""
        assert virasoro_service.extract_A(1, 2) != rrs_formula(2, 1)


@pytest.mark.virasoro
class TestStructuralProperties:
    """rs-symmetry, leading terms, t-negation, evenness, degrees, zeros, closed forms."""

    @pytest.mark.unit
    @pytest.mark.parametrize("r,s", rs_pairs(4))
    def test_property_suite(self, virasoro_service: VirasoroService, r, s):
        records = [
            virasoro_service.rs_symmetry_check(r, s),
            virasoro_service.leading_term_check(r, s),
            virasoro_service.t_negation_check(r, s),
            virasoro_service.evenness_check(r, s),
            virasoro_service.degree_bound_check(r, s),
            virasoro_service.zero_set_check(r, s),
            virasoro_service.shapovalov_closed_form_check(r, s),
            virasoro_service.shapovalov_degree_check(r, s),
        ]
        failing = [(rec.check, rec.diff) for rec in records if rec.status != CheckStatus.PASS]
        assert not failing, f"({r}, {s}): {failing}"

    @pytest.mark.unit
    @pytest.mark.parametrize("s", [1, 2, 3, 4])
    def test_one_row_formula(self, virasoro_service: VirasoroService, s):
        assert virasoro_service.one_row_formula_check(s).status == CheckStatus.PASS

    @pytest.mark.slow
    @pytest.mark.parametrize("r,s", [(r, s) for r, s in rs_pairs(6) if r * s > 4])
    def test_property_suite_to_level_six(self, virasoro_service: VirasoroService, r, s):
        records = [
            virasoro_service.leading_term_check(r, s),
            virasoro_service.t_negation_check(r, s),
            virasoro_service.evenness_check(r, s),
            virasoro_service.degree_bound_check(r, s),
            virasoro_service.zero_set_check(r, s),
        ]
        assert all(rec.status == CheckStatus.PASS for rec in records)


@pytest.mark.virasoro
class TestGaiottoCoefficients:
    """f_n = (K_n^-1)_{(1^n),(1^n)} and its recursion in h."""

    @pytest.mark.unit
    def test_first_coefficients(self, virasoro_service: VirasoroService):
        """f_0 = 1 and f_1 = 1 / (2h)."""
        field_, (t, h) = ratfunc_field(("t", "h"))
        assert virasoro_service.gaiotto_coeff(0) == field_.one
        assert virasoro_service.gaiotto_coeff(1) == 1 / (2 * h)
        assert virasoro_service.gaiotto_value(1, QQ(2, 5), QQ(3, 7)) == QQ(7, 6)

    @pytest.mark.unit
    def test_value_on_the_kac_locus_is_a_pole(self, virasoro_service: VirasoroService):
        """h = h_{1,1} = 0 makes K_1 singular; the check is skipped, not failed."""
        records = virasoro_service.virasoro_recursion_check(1, [(QQ(2, 5), QQ(0))])
        assert records[1].status == CheckStatus.SKIPPED

    @pytest.mark.integration
    def test_recursion_on_fixed_points(self, virasoro_service: VirasoroService, th_points):
        records = virasoro_service.virasoro_recursion_check(3, th_points)
        assert len(records) == 4 * len(th_points)
        failing = [r.identifier for r in records if r.status != CheckStatus.PASS]
        assert not failing, f"Virasoro recursion failed at {failing}"

    @pytest.mark.integration
    def test_symbolic_and_pointwise_agree(self, virasoro_service: VirasoroService, th_points):
        records = virasoro_service.gaiotto_consistency_check(3, th_points)
        assert all(r.status == CheckStatus.PASS for r in records)

