"""
Tests for Nekrasov instanton sums, the exponent calibration and the AGT cross-checks.

Sample points are fixed rationals whose h values stay off every Kac pole up to
the levels used here.
"""
import pytest
from sympy import QQ

from virnorm.algebra.quadratic import QuadraticSurd
from virnorm.algebra.ratfunc import evaluate_ratfunc, ratfunc_field
from virnorm.core.exceptions import PoleCollisionError, ValidationError
from virnorm.models.gauge import GaugeParams, TuplePartition
from virnorm.models.partition import Partition
from virnorm.schemas.report import CheckStatus
from virnorm.services.nekrasov_service import (
    CANDIDATE_EXPONENTS,
    NekrasovService,
    a_from_h,
    h_from_a,
    pair_factor,
)

P = Partition
SU2_FIELD, (E1, E2, A) = ratfunc_field(("e1", "e2", "a"))


def failing(records):
    return [(r.check, r.identifier, r.diff) for r in records if r.status != CheckStatus.PASS]


@pytest.mark.unit
@pytest.mark.nekrasov
class TestPairFactors:
    """n_{alpha,beta}(Y) for the simplest tuples."""

    def test_single_box(self):
        """Y = ((1), ()): n_11 = e1 e2, n_12 = a + e1 + e2, n_21 = -a."""
        params = GaugeParams.su2_generic()
        Y = TuplePartition((P((1,)), P()))
        assert pair_factor(1, 1, Y, params) == E1 * E2
        assert pair_factor(1, 2, Y, params) == A + E1 + E2
        assert pair_factor(2, 1, Y, params) == -A
        assert pair_factor(2, 2, Y, params) == SU2_FIELD.one, "empty pairs contribute 1"

    @pytest.mark.edge_cases
    def test_empty_product_is_a_field_element(self):
        """Both components empty: the unit of QQ(e1, e2, a), not a Python int."""
        Y = TuplePartition((P(), P()))
        factor = pair_factor(1, 2, Y, GaugeParams.su2_generic())
        assert not isinstance(factor, (int, float))
        assert factor.field == SU2_FIELD
        assert factor == SU2_FIELD.one

    @pytest.mark.edge_cases
    def test_rank_mismatch(self):
        with pytest.raises(ValidationError):
            pair_factor(1, 1, TuplePartition((P((1,)),)), GaugeParams.su2_generic())


@pytest.mark.nekrasov
@pytest.mark.golden
class TestInstantonSums:
    """Z_n in generic and Virasoro parameters."""

    @pytest.mark.unit
    def test_zero_instantons(self, nekrasov_service: NekrasovService):
        z0 = nekrasov_service.nekrasov_Zn(0, GaugeParams.su2_generic())
        assert not isinstance(z0, float), "Z_0 must stay exact"
        assert z0.field == SU2_FIELD
        assert z0 == SU2_FIELD.one

    @pytest.mark.unit
    def test_zero_instantons_at_a_virasoro_point(self, nekrasov_service: NekrasovService):
        a_field, (a,) = ratfunc_field(("a",))
        z0 = nekrasov_service.nekrasov_Zn(0, GaugeParams.virasoro(QQ(2, 5), a))
        assert not isinstance(z0, float)
        assert z0 == a_field.one

    @pytest.mark.unit
    def test_one_instanton(self, nekrasov_service: NekrasovService):
        """Z_1 = 2 / (e1 e2 ((e1 + e2)^2 - a^2))."""
        expected = 2 / (E1 * E2 * ((E1 + E2) ** 2 - A**2))
        assert nekrasov_service.nekrasov_Zn(1, GaugeParams.su2_generic()) == expected

    @pytest.mark.unit
    def test_generic_rank_two(self, nekrasov_service: NekrasovService):
        """In independent a1, a2 the sum depends on a2 - a1 only."""
        field_, (e1, e2, a1, a2) = ratfunc_field(("e1", "e2", "a1", "a2"))
        expected = 2 / (e1 * e2 * ((e1 + e2) ** 2 - (a2 - a1) ** 2))
        assert nekrasov_service.generic_Zn(1) == expected

    @pytest.mark.unit
    def test_calibrated_exponent(self, nekrasov_service: NekrasovService):
        """f_1 = (eps1 eps2)^2 Z_1; the other candidate does not fit."""
        calibration = nekrasov_service.calibrate_exponent()
        assert calibration.exponent == 2
        assert nekrasov_service.exponent == 2
        assert 4 in CANDIDATE_EXPONENTS
        field_, (t, a) = ratfunc_field(("t", "a"))
        z1 = nekrasov_service.nekrasov_Zn(1, GaugeParams.virasoro(t, a))
        f1 = evaluate_ratfunc(
            nekrasov_service.virasoro.gaiotto_coeff(1), {"t": t, "h": h_from_a(t, a)}
        )
        assert (-t) ** 4 * z1 != f1

    @pytest.mark.unit
    def test_first_coefficient_at_irrational_a(self, nekrasov_service: NekrasovService):
        """z_1(2/5, 3/7) = 1 / (2 h) = 7/6; a^2 = 183/175 is not a square."""
        assert isinstance(a_from_h(QQ(2, 5), QQ(3, 7)), QuadraticSurd)
        assert nekrasov_service.z_value(1, QQ(2, 5), QQ(3, 7)) == QQ(7, 6)

    @pytest.mark.unit
    def test_dictionary_round_trip(self):
        """At t = 1/2, a = 3/2 corresponds to h = 1."""
        assert h_from_a(QQ(1, 2), QQ(3, 2)) == QQ(1)
        assert a_from_h(QQ(1, 2), QQ(1)) == QQ(3, 2)

    @pytest.mark.edge_cases
    def test_t_zero_is_a_pole(self, nekrasov_service: NekrasovService):
        with pytest.raises(PoleCollisionError):
            h_from_a(QQ(0), QQ(1))
        with pytest.raises(ValidationError):
            nekrasov_service.nekrasov_Zn(-1, GaugeParams.su2_generic())

    @pytest.mark.unit
    def test_summation_order(self, nekrasov_service: NekrasovService, ta_points):
        assert not failing(nekrasov_service.summation_order_check(3, ta_points))


@pytest.mark.nekrasov
class TestStructuralIdentities:
    """a-parity, eps-swap with transposition and homogeneity."""

    @pytest.mark.unit
    def test_eps_swap(self, nekrasov_service: NekrasovService):
        assert not failing(nekrasov_service.eps_swap_check(3))

    @pytest.mark.unit
    def test_a_parity_and_homogeneity(self, nekrasov_service: NekrasovService):
        t_values = [QQ(2, 5), QQ(5, 3)]
        assert not failing(nekrasov_service.a_parity_check(2, t_values))
        assert not failing(nekrasov_service.homogeneity_check(2, t_values))

    @pytest.mark.unit
    def test_gauge_suite(self, nekrasov_service: NekrasovService):
        records = nekrasov_service.gauge_checks(2, [QQ(2, 5)], swap_level=2)
        assert {r.check for r in records} == {"a-parity", "eps-swap", "homogeneity"}
        assert not failing(records)


@pytest.mark.nekrasov
class TestAgtComparison:
    """f_n from the Kac matrix against z_n from the instanton sum."""

    @pytest.mark.integration
    def test_agt(self, nekrasov_service: NekrasovService, ta_points):
        records = nekrasov_service.agt_check(3, ta_points)
        assert len(records) == 4 * len(ta_points)
        assert not failing(records)

    @pytest.mark.integration
    def test_cross_side_and_gauge_recursion(self, nekrasov_service: NekrasovService, th_points):
        assert not failing(nekrasov_service.cross_side_check(3, th_points))
        assert not failing(nekrasov_service.gauge_recursion_check(3, th_points))

    @pytest.mark.slow
    def test_agt_to_level_five(self, nekrasov_service: NekrasovService, ta_points):
        assert not failing(nekrasov_service.agt_check(5, ta_points[:1]))

    @pytest.mark.edge_cases
    def test_pole_points_are_skipped(self, nekrasov_service: NekrasovService):
        """t = 0 is a pole of the dictionary; records are skipped, not failed."""
        records = nekrasov_service.agt_check(1, [(QQ(0), QQ(1))])
        assert [r.status for r in records] == [CheckStatus.SKIPPED, CheckStatus.SKIPPED]
