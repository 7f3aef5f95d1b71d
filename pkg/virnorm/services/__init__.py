from .bosonization_service import BosonizationService
from .nekrasov_service import NekrasovService
from .panel_service import PanelService
from .symfunc_service import SymFuncService
from .virasoro_service import VirasoroService

__all__ = [
    "BosonizationService",
    "NekrasovService",
    "PanelService",
    "SymFuncService",
    "VirasoroService",
]
