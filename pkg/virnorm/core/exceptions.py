from typing import Any, Dict, Optional


class VirnormError(Exception):
    def __init__(
        self,
        message: str,
        exit_code: int = 1,
        error_code: str = "INTERNAL_ERROR",
        details: Optional[Dict[str, Any]] = None,
    ):
        self.message = message
        self.exit_code = exit_code
        self.error_code = error_code
        self.details = details or {}
        super().__init__(self.message)


class UsageError(VirnormError):
    def __init__(
        self,
        message: str = "Invalid command line",
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(
            message=message, exit_code=2, error_code="USAGE_ERROR", details=details
        )


class TimeBudgetError(UsageError):
    def __init__(
        self,
        command: str,
        estimate_secs: float,
        budget_secs: float,
        details: Optional[Dict[str, Any]] = None,
    ):
        error_details = details or {}
        error_details.update(
            {"command": command, "estimate_secs": estimate_secs, "budget": budget_secs}
        )
        super().__init__(
            message=(
                f"{command}: requested bounds need about {estimate_secs:.0f}s, "
                f"over the {budget_secs:.0f}s time budget"
            ),
            details=error_details,
        )
        self.error_code = "TIME_BUDGET_EXCEEDED"


class ValidationError(VirnormError):
    def __init__(
        self,
        message: str = "Validation failed",
        field: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        error_details = details or {}
        if field:
            error_details["field"] = field

        super().__init__(
            message=message,
            exit_code=2,
            error_code="VALIDATION_ERROR",
            details=error_details,
        )


class UndefinedDegreeError(VirnormError):
    def __init__(self, details: Optional[Dict[str, Any]] = None):
        super().__init__(
            message="degree of zero undefined",
            error_code="UNDEFINED_DEGREE",
            details=details,
        )


class DivisionByZeroError(VirnormError, ZeroDivisionError):
    def __init__(
        self,
        message: str = "division by zero",
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(
            message=message, error_code="DIVISION_BY_ZERO", details=details
        )


class PoleCollisionError(VirnormError):
    def __init__(
        self,
        message: str = "Sample point hits a pole",
        offender: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        error_details = details or {}
        if offender:
            error_details["offender"] = offender
            message = f"{message}: {offender}"

        super().__init__(
            message=message, error_code="POLE_COLLISION", details=error_details
        )


class SpecializationError(VirnormError):
    def __init__(
        self,
        message: str = "specialize α first",
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(
            message=message, error_code="NOT_SPECIALIZED", details=details
        )


class InvariantViolation(VirnormError):
    def __init__(
        self,
        message: str = "Internal invariant violated",
        invariant: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        error_details = details or {}
        if invariant:
            error_details["invariant"] = invariant

        super().__init__(
            message=message, error_code="INVARIANT_VIOLATION", details=error_details
        )


class CalibrationError(VirnormError):
    def __init__(
        self,
        message: str = "No exponent reproduces the first instanton coefficient",
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(
            message=message, error_code="CALIBRATION_FAILED", details=details
        )
