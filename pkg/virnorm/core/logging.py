import json
import logging
import logging.handlers
import sys
import uuid
from contextvars import ContextVar
from typing import Any, Dict, Optional

from .config import get_settings

# Context variable for the run id shared by every record of one CLI invocation
run_id_ctx: ContextVar[str] = ContextVar("run_id", default="")

_RESERVED = frozenset(
    (
        "name",
        "msg",
        "args",
        "levelname",
        "levelno",
        "pathname",
        "filename",
        "module",
        "exc_info",
        "exc_text",
        "stack_info",
        "lineno",
        "funcName",
        "created",
        "msecs",
        "relativeCreated",
        "thread",
        "threadName",
        "processName",
        "process",
        "message",
        "run_id",
        "taskName",
    )
)


class RunIdFilter(logging.Filter):
    """Filter to add the run id to log records."""

    def filter(self, record: logging.LogRecord) -> bool:
        record.run_id = run_id_ctx.get() or "no-run-id"
        return True


class StructuredFormatter(logging.Formatter):
    """Formatter emitting one JSON object per record."""

    def format(self, record: logging.LogRecord) -> str:
        log_entry = {
            "timestamp": self.formatTime(record, self.datefmt),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "run_id": getattr(record, "run_id", "no-run-id"),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
        }

        if record.exc_info:
            log_entry["exception"] = self.formatException(record.exc_info)

        for key, value in record.__dict__.items():
            if key not in _RESERVED:
                log_entry[key] = value

        return json.dumps(log_entry, default=str)


def set_run_id(run_id: str) -> None:
    """Set run id for current context."""
    run_id_ctx.set(run_id)


def get_run_id() -> str:
    """Get current run id."""
    return run_id_ctx.get()


def generate_run_id() -> str:
    """Generate a new run id."""
    return uuid.uuid4().hex[:12]


def log_check(
    check: str,
    identifier: str,
    status: str,
    wall_time_ms: float,
    details: Optional[Dict[str, Any]] = None,
) -> None:
    """Log the outcome of one verification check."""
    logger = logging.getLogger("virnorm.check")

    log_data = {
        "event": "check_finished",
        "check": check,
        "identifier": identifier,
        "status": status,
        "wall_time_ms": round(wall_time_ms, 2),
    }
    if details:
        log_data["details"] = details

    if status == "error":
        logger.error("Check finished", extra=log_data)
    elif status == "fail":
        logger.warning("Check finished", extra=log_data)
    else:
        logger.info("Check finished", extra=log_data)


def log_error(error: Exception, context: Optional[Dict[str, Any]] = None) -> None:
    """Log error with context."""
    logger = logging.getLogger("virnorm.error")

    log_data = {
        "event": "error_occurred",
        "error_type": type(error).__name__,
        "error_message": str(error),
        "context": context or {},
    }

    logger.error("Error occurred", extra=log_data, exc_info=True)


def setup_logging(
    log_level: Optional[str] = None,
    log_file: Optional[str] = None,
    structured_logging: Optional[bool] = None,
) -> None:
    """Configure the root logger; the report owns stdout so records go to stderr."""
    settings = get_settings()
    if log_level is None:
        log_level = settings.log_level
    if log_file is None:
        log_file = settings.log_file
    if structured_logging is None:
        structured_logging = settings.structured_logging

    numeric_level = getattr(logging, log_level.upper(), None)
    if not isinstance(numeric_level, int):
        raise ValueError(f"Invalid log level: {log_level}")

    run_id_filter = RunIdFilter()

    formatter: logging.Formatter
    if structured_logging:
        formatter = StructuredFormatter(datefmt="%Y-%m-%d %H:%M:%S")
    else:
        formatter = logging.Formatter(
            fmt="%(asctime)s - %(name)s - %(levelname)s - [%(run_id)s] - %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )

    root_logger = logging.getLogger()
    root_logger.setLevel(numeric_level)

    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(numeric_level)
    console_handler.setFormatter(formatter)
    console_handler.addFilter(run_id_filter)
    root_logger.addHandler(console_handler)

    if log_file:
        file_handler = logging.handlers.RotatingFileHandler(
            log_file, maxBytes=10 * 1024 * 1024, backupCount=5, encoding="utf-8"  # 10MB
        )
        file_handler.setLevel(numeric_level)
        file_handler.setFormatter(StructuredFormatter(datefmt="%Y-%m-%d %H:%M:%S"))
        file_handler.addFilter(run_id_filter)
        root_logger.addHandler(file_handler)

    logging.getLogger("virnorm").setLevel(numeric_level)

    logging.getLogger(__name__).debug(
        f"Logging configured - Level: {log_level}, File: {log_file}, "
        f"Structured: {structured_logging}"
    )


def get_logger(name: str) -> logging.Logger:
    """Get logger for specific module."""
    return logging.getLogger(name)
