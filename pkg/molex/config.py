"""
Configuration management for the molecular index explorer.

This module uses pydantic-settings to manage environment variables with type validation.
Every setting can be overridden with a ``MOLEX_``-prefixed variable or a ``.env`` file.

Usage:
    from molex.config import get_settings

    # Access configuration values
    settings = get_settings()
    tol = settings.tol              # MOLEX_TOL
    grid = settings.alpha_grid      # MOLEX_ALPHA_GRID='[-1, -0.5, 0.5, 2]'
"""

from functools import lru_cache
from typing import List

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


DEFAULT_ALPHA_GRID: List[float] = [-1.0, -0.7, -0.5, -0.3, -0.1, 0.3, 0.5, 0.7, 1.3, 1.5, 1.7, 2.0]
DEFAULT_K_GRID: List[float] = [0.1, 0.25, 0.5, 0.75, 1.0]


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    # Numerical Configuration
    tol: float = Field(
        default=1e-9,
        gt=0,
        description="Absolute tolerance used to decide bound equality on index values"
    )

    grid_step: float = Field(
        default=1e-3,
        gt=0,
        le=0.1,
        description="Step of the dense parameter grids used by the lemma checks"
    )

    alpha_grid: List[float] = Field(
        default_factory=lambda: list(DEFAULT_ALPHA_GRID),
        description="Default alpha values for exhaustive bound verification (chi and Platt)"
    )

    k_grid: List[float] = Field(
        default_factory=lambda: list(DEFAULT_K_GRID),
        description="Default k values for exhaustive bound verification (OGA)"
    )

    # Search Configuration
    jobs: int = Field(
        default=1,
        ge=1,
        description="Worker processes used to expand the last enumeration level"
    )

    max_order: int = Field(
        default=12,
        ge=1,
        le=12,
        description="Largest vertex count accepted by the enumerator"
    )

    realize_node_budget: int = Field(
        default=200_000,
        ge=1,
        description="Node budget of the backtracking fallback in census realization"
    )

    # Application Configuration
    log_level: str = Field(
        default="INFO",
        description="Logging level (DEBUG/INFO/WARNING/ERROR/CRITICAL)"
    )

    app_name: str = Field(
        default="Molecular Index Explorer",
        description="Application name for FastAPI"
    )

    app_version: str = Field(
        default="0.1.0",
        description="Application version"
    )

    model_config = SettingsConfigDict(
        env_prefix="MOLEX_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False
    )

    @field_validator("log_level")
    @classmethod
    def log_level_known(cls, v: str) -> str:
        """Normalize and validate the logging level name."""
        level = v.strip().upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown log level: {v}")
        return level


@lru_cache
def get_settings() -> Settings:
    """
    Get cached Settings instance.

    Uses lru_cache so the environment is read only once per process. Tests that
    patch the environment call ``get_settings.cache_clear()`` first.

    Returns:
        Settings: Cached application settings instance
    """
    return Settings()
