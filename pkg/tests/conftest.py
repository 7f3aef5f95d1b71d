"""
Test configuration and fixtures.
"""
import os
from typing import Generator

import pytest
from sympy import QQ

from virnorm.core.config import get_settings
from virnorm.core.logging import set_run_id
from virnorm.services.bosonization_service import BosonizationService
from virnorm.services.nekrasov_service import NekrasovService
from virnorm.services.panel_service import PanelService
from virnorm.services.symfunc_service import SymFuncService
from virnorm.services.virasoro_service import VirasoroService

# Fixed sample points well away from every pole used by the checks up to level 4
SAMPLE_TH_POINTS = [(QQ(2, 5), QQ(3, 7)), (QQ(5, 3), QQ(-2, 9))]
SAMPLE_TA_POINTS = [(QQ(2, 5), QQ(7, 3)), (QQ(5, 3), QQ(-11, 4))]


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch) -> Generator[None, None, None]:
    """Drop VIRNORM_* overrides from the environment and the cached settings."""
    for key in list(os.environ):
        if key.startswith("VIRNORM_"):
            monkeypatch.delenv(key, raising=False)
    get_settings.cache_clear()
    set_run_id("test-run")
    yield
    get_settings.cache_clear()


@pytest.fixture(scope="session")
def virasoro_service() -> VirasoroService:
    """Session-wide Virasoro service; its memo caches are shared across tests."""
    return VirasoroService(singular_method="annihilator")


@pytest.fixture(scope="session")
def symfunc_service() -> SymFuncService:
    """Session-wide Jack function service."""
    return SymFuncService()


@pytest.fixture(scope="session")
def bosonization_service(
    virasoro_service: VirasoroService, symfunc_service: SymFuncService
) -> BosonizationService:
    """Feigin-Fuchs service wired to the shared Virasoro and Jack services."""
    return BosonizationService(virasoro=virasoro_service, symfunc=symfunc_service)


@pytest.fixture(scope="session")
def nekrasov_service(virasoro_service: VirasoroService) -> NekrasovService:
    """Instanton service wired to the shared Virasoro service."""
    return NekrasovService(virasoro=virasoro_service)


@pytest.fixture
def panel_service() -> PanelService:
    """Panel drawer with a fixed seed and a small size."""
    return PanelService(seed=7, size=4)


@pytest.fixture
def th_points():
    """Hand-picked (t0, h0) points."""
    return list(SAMPLE_TH_POINTS)


@pytest.fixture
def ta_points():
    """Hand-picked (t0, a0) points."""
    return list(SAMPLE_TA_POINTS)
