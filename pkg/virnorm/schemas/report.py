from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    computed_field,
    field_validator,
    model_serializer,
    model_validator,
)

SCHEMA_VERSION = "1.0"


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"
    ERROR = "error"


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"
    LATEX = "latex"


class CheckRecord(BaseModel):
    """Outcome of one verification check."""

    model_config = ConfigDict(use_enum_values=False)

    check: str = Field(..., description="Check name, e.g. kac-det")
    identifier: str = Field(..., description="What was checked, e.g. level=3")
    status: CheckStatus
    pair: Optional[List[int]] = Field(default=None, description="(r, s) when relevant")
    values: Dict[str, str] = Field(default_factory=dict)
    diff: Optional[str] = Field(default=None, description="Witness of a failure")
    reference: Optional[str] = Field(default=None, description="Closed form compared to")
    latex: Optional[str] = None
    wall_time_ms: Optional[float] = Field(default=None, exclude=True)

    @model_validator(mode="before")
    @classmethod
    def collect_values(cls, data: Any) -> Any:
        """Fold flat keys such as ``"A"`` back into ``values``."""
        if not isinstance(data, dict):
            return data
        extra = {k: v for k, v in data.items() if k not in cls.model_fields}
        if not extra:
            return data
        folded = {k: v for k, v in data.items() if k in cls.model_fields}
        values = dict(folded.get("values") or {})
        values.update({k: str(v) for k, v in extra.items()})
        folded["values"] = values
        return folded

    @model_serializer(mode="wrap")
    def flatten_values(self, handler) -> Dict[str, Any]:
        # values are emitted next to the fixed keys: {"pair": [1,1], "A": "2", ...}
        data = handler(self)
        for key, value in (data.pop("values", None) or {}).items():
            data.setdefault(key, value)
        return data

    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.PASS

    @property
    def blocking(self) -> bool:
        """Failures and errors fail the run; skipped records do not."""
        return self.status in (CheckStatus.FAIL, CheckStatus.ERROR)


class RunConfig(BaseModel):
    """Resolved command line of one run."""

    command: str
    level: Optional[int] = Field(default=None, ge=0)
    r: Optional[int] = Field(default=None, ge=1)
    s: Optional[int] = Field(default=None, ge=1)
    max_level: Optional[int] = Field(default=None, ge=1)
    samples: int = Field(default=20, ge=1)
    seed: int = 20240131
    format: OutputFormat = OutputFormat.TEXT
    out: Optional[str] = None
    time_budget_secs: float = Field(default=900.0, gt=0)
    method: str = "annihilator"
    partition: Optional[str] = None
    word: Optional[str] = None
    timings: bool = Field(default=False, description="Carry wall times into JSON records")

    @field_validator("method")
    @classmethod
    def validate_method(cls, v: str) -> str:
        if v not in ("annihilator", "kac"):
            raise ValueError("method must be 'annihilator' or 'kac'")
        return v


class Report(BaseModel):
    """Machine-readable verification report."""

    schema_version: str = SCHEMA_VERSION
    command: str
    argv: List[str] = Field(default_factory=list)
    notes: Dict[str, str] = Field(default_factory=dict)
    records: List[CheckRecord] = Field(default_factory=list)

    @computed_field  # type: ignore[misc]
    @property
    def overall(self) -> CheckStatus:
        if any(record.blocking for record in self.records):
            return CheckStatus.FAIL
        return CheckStatus.PASS

    @property
    def exit_code(self) -> int:
        return 0 if self.overall == CheckStatus.PASS else 1

    def counts(self) -> Dict[str, int]:
        totals = {status.value: 0 for status in CheckStatus}
        for record in self.records:
            totals[record.status.value] += 1
        return totals
