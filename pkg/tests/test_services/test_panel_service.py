"""
Tests for seeded sample panels.
"""
import pytest
from sympy import QQ

from virnorm.core.exceptions import ValidationError
from virnorm.services.nekrasov_service import h_from_a
from virnorm.services.panel_service import PanelService, SamplePanel


@pytest.mark.unit
class TestPointFilters:
    """Rejection of t and h values that meet a pole."""

    @pytest.mark.parametrize("t0", [QQ(0), QQ(1), QQ(-1), QQ(-1, 2), QQ(-2, 3)])
    def test_rejected_t_values(self, panel_service: PanelService, t0):
        assert not panel_service.t_allowed(t0, 3), f"t = {t0} should be rejected"

    def test_zero_of_a_norm_is_rejected(self, panel_service: PanelService):
        """A_{1,3} = 24 (t^2 - 1)(4 t^2 - 1) vanishes at t = 1/2."""
        assert panel_service.t_allowed(QQ(1, 2), 2)
        assert not panel_service.t_allowed(QQ(1, 2), 3)

    def test_accepted_t_value(self, panel_service: PanelService):
        assert panel_service.t_allowed(QQ(2, 5), 4)

    def test_kac_locus_is_rejected(self, panel_service: PanelService):
        """h_{1,1} = 0 and h_{1,2}(2/5) = -1/5 sit on the Kac locus."""
        assert not panel_service.h_allowed(QQ(2, 5), QQ(0), 1)
        assert not panel_service.h_allowed(QQ(2, 5), QQ(-1, 5), 2)
        assert panel_service.h_allowed(QQ(2, 5), QQ(3, 7), 4)


@pytest.mark.unit
class TestPanels:
    """Deterministic draws."""

    def test_same_seed_same_points(self):
        first = PanelService(seed=11, size=5).th_panel(3)
        second = PanelService(seed=11, size=5).th_panel(3)
        assert first.points == second.points
        assert first.describe() == second.describe()

    def test_different_seeds_differ(self):
        first = PanelService(seed=1, size=5).th_panel(3)
        second = PanelService(seed=2, size=5).th_panel(3)
        assert first.points != second.points

    def test_th_points_are_admissible(self, panel_service: PanelService):
        panel = panel_service.th_panel(3)
        assert len(panel.points) == 4
        assert len(set(panel.points)) == 4, "points are drawn without repetition"
        for t0, h0 in panel.points:
            assert panel_service.t_allowed(t0, 3)
            assert panel_service.h_allowed(t0, h0, 3)

    def test_ta_points_are_admissible(self, panel_service: PanelService):
        panel = panel_service.ta_panel(3)
        for t0, a0 in panel.points:
            assert a0 != 0
            assert panel_service.h_allowed(t0, h_from_a(t0, a0), 3)

    def test_size_defaults_to_settings(self, monkeypatch):
        monkeypatch.setenv("VIRNORM_SAMPLE_COUNT", "3")
        from virnorm.core.config import get_settings

        get_settings.cache_clear()
        assert PanelService(seed=5).size == 3

    @pytest.mark.edge_cases
    def test_size_must_be_positive(self):
        with pytest.raises(ValidationError):
            PanelService(seed=1, size=0)

    def test_t_values_keep_first_occurrence_order(self):
        panel = SamplePanel(
            seed=0,
            level=1,
            points=[(QQ(2), QQ(1)), (QQ(3), QQ(1)), (QQ(2), QQ(5))],
        )
        assert panel.t_values() == [QQ(2), QQ(3)]
        assert panel.describe() == "(2, 1); (3, 1); (2, 5)"
