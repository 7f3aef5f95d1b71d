from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict

from ..core.exceptions import VirnormError


class ErrorResponse(BaseModel):
    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "error": True,
                "message": "kac-det: --level must be a positive integer",
                "error_code": "USAGE_ERROR",
                "exit_code": 2,
                "details": {"field": "level"},
            }
        }
    )

    error: bool = True
    message: str
    error_code: str
    exit_code: int
    details: Optional[Dict[str, Any]] = None

    @classmethod
    def from_exception(cls, exc: VirnormError) -> "ErrorResponse":
        return cls(
            message=exc.message,
            error_code=exc.error_code,
            exit_code=exc.exit_code,
            details={k: str(v) for k, v in exc.details.items()} or None,
        )
