from functools import lru_cache
from typing import Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables and an optional .env file."""

    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", case_sensitive=False, extra="ignore"
    )

    # Logging settings
    log_level: str = Field(default="WARNING", alias="VIRNORM_LOG_LEVEL")
    log_file: Optional[str] = Field(default=None, alias="VIRNORM_LOG_FILE")
    structured_logging: bool = Field(default=False, alias="VIRNORM_STRUCTURED_LOGGING")

    # Sample panels for pointwise checks
    sample_seed: int = Field(default=20240131, alias="VIRNORM_SAMPLE_SEED")
    sample_count: int = Field(default=20, alias="VIRNORM_SAMPLE_COUNT")

    # Computation limits
    time_budget_secs: float = Field(default=900.0, alias="VIRNORM_TIME_BUDGET_SECS")
    max_level: int = Field(default=8, alias="VIRNORM_MAX_LEVEL")
    singular_method: str = Field(default="annihilator", alias="VIRNORM_SINGULAR_METHOD")

    # Bounds used by the `all` command
    all_kac_level: int = Field(default=6, alias="VIRNORM_ALL_KAC_LEVEL")
    all_theorem_level: int = Field(default=8, alias="VIRNORM_ALL_THEOREM_LEVEL")
    all_property_level: int = Field(default=6, alias="VIRNORM_ALL_PROPERTY_LEVEL")
    all_jack_degree: int = Field(default=6, alias="VIRNORM_ALL_JACK_DEGREE")
    all_integral_degree: int = Field(default=8, alias="VIRNORM_ALL_INTEGRAL_DEGREE")
    all_agt_level: int = Field(default=5, alias="VIRNORM_ALL_AGT_LEVEL")
    all_recursion_level: int = Field(default=4, alias="VIRNORM_ALL_RECURSION_LEVEL")

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level."""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid_levels:
            raise ValueError(f"Log level must be one of: {valid_levels}")
        return v.upper()

    @field_validator("singular_method")
    @classmethod
    def validate_singular_method(cls, v: str) -> str:
        """Validate the kernel construction used for singular vectors."""
        if v.lower() not in ("annihilator", "kac"):
            raise ValueError("Singular method must be 'annihilator' or 'kac'")
        return v.lower()

    @field_validator(
        "sample_count",
        "max_level",
        "all_kac_level",
        "all_theorem_level",
        "all_property_level",
        "all_jack_degree",
        "all_integral_degree",
        "all_agt_level",
        "all_recursion_level",
    )
    @classmethod
    def validate_positive(cls, v: int) -> int:
        """Bounds and panel sizes must be positive."""
        if v < 1:
            raise ValueError("Value must be a positive integer")
        return v

    @field_validator("time_budget_secs")
    @classmethod
    def validate_budget(cls, v: float) -> float:
        if v <= 0:
            raise ValueError("Time budget must be positive")
        return v


@lru_cache
def get_settings() -> Settings:
    """Get toolkit settings."""
    return Settings()  # type: ignore
