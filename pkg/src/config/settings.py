"""Engine configuration loaded from environment variables."""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Central configuration for the ialg engine.

    Args loaded from .env file and IALG_-prefixed environment variables.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="IALG_",
        case_sensitive=False,
    )

    # Arithmetic
    default_field: str = "Q"

    # Resource ceilings
    window_limit: int = Field(default=10_000, ge=1)
    component_dim_limit: int = Field(default=10_000, ge=1)
    path_count_limit: int = Field(default=1_000_000, ge=1)

    # Semi-decision policy
    generation_chain_length: int = Field(default=3, ge=3)
    probe_chain_length: int = Field(default=4, ge=4)
    probe_margin: int = Field(default=1, ge=0)

    # Scheduling
    workers: int = Field(default=1, ge=1)

    # Output
    log_level: str = "WARNING"
    json_indent: int = 2
    engine_version: str = "0.1.0"


def get_settings() -> Settings:
    """Return a Settings instance.

    Returns:
        Engine settings loaded from env.
    """
    return Settings()
