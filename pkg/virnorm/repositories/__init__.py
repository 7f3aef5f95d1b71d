from .memo import MemoCache
from .verma_repository import VermaRepository

__all__ = ["MemoCache", "VermaRepository"]
