from .errors import ErrorResponse
from .report import CheckRecord, CheckStatus, OutputFormat, Report, RunConfig

__all__ = [
    # Report schemas
    "CheckRecord",
    "CheckStatus",
    "OutputFormat",
    "Report",
    "RunConfig",
    # Error schemas
    "ErrorResponse",
]
