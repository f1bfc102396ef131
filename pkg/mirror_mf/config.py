"""Configuration settings for the mirror factorization verifier."""

from enum import Enum

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class QConvention(str, Enum):
    """Which Novikov variable the text output is printed in."""

    INTERNAL = "internal"  # T with rational exponents
    Q_SQUARE = "q-square"  # q = T^(2/m) on the (m, n) line, q = T elsewhere
    Q_ROOT = "q-root"  # q = T^(1/m) on the (m, n) line, q = T elsewhere

    @classmethod
    def _missing_(cls, value):
        if isinstance(value, str):
            return CONVENTION_ALIASES.get(value.lower())
        return None


# Older names for the same conventions, still accepted on input.
CONVENTION_ALIASES = {"section3": QConvention.Q_SQUARE, "section6": QConvention.Q_ROOT}


class Settings(BaseSettings):
    """Application settings."""

    # Application
    app_name: str = "Mirror MF Verifier"
    app_version: str = "1.0.0"
    log_level: str = Field(default="WARNING")

    # Display
    q_convention: QConvention = Field(default=QConvention.INTERNAL)

    @field_validator("q_convention", mode="before")
    @classmethod
    def _resolve_alias(cls, value):
        return QConvention(value) if isinstance(value, str) else value

    # Numeric strip checks
    identity_tolerance: float = Field(default=1e-10, gt=0)
    input_tolerance: float = Field(default=1e-12, gt=0)
    scan_t1_steps: int = Field(default=21, ge=2)
    scan_angle_steps: int = Field(default=36, ge=2)
    random_seed: int = Field(default=1729)

    # Exact sweeps
    max_weight_sum: int = Field(default=12, ge=2)

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="MIRROR_MF_",
        case_sensitive=False,
        extra="ignore",  # Ignore extra fields from .env
    )


# Global settings instance
settings = Settings()
