"""
Configuration Module
Resource caps and runtime options, read from the environment (optionally via a .env file).
"""

import logging
import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)

_ENV_PREFIX = "ATCERT_"


class Settings(BaseModel):
    """
    Resource caps for the exponential oracles and options for the solvers.

    Every field can be overridden with an ``ATCERT_<FIELD_NAME>`` environment variable.
    """

    enum_arc_cap: int = Field(24, ge=0)
    coeff_term_cap: int = Field(10_000_000, ge=1)
    brute_force_edge_cap: int = Field(20, ge=0)
    enum_assert_arc_limit: int = Field(18, ge=0)
    coloring_vertex_cap: int = Field(16, ge=0)
    exhaustive_vertex_cap: int = Field(7, ge=0)
    exhaustive_budget_cap: int = Field(12, ge=0)
    flow_algorithm: str = "preflow_push"
    log_level: str = "INFO"

    @classmethod
    def from_env(cls) -> "Settings":
        """Build settings from ``ATCERT_*`` environment variables."""
        values = {}
        for name in cls.model_fields:
            raw = os.getenv(_ENV_PREFIX + name.upper())
            if raw is not None and raw != "":
                values[name] = raw
        return cls(**values)


# Global instance for reuse across modules
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """
    Get or create the global settings instance.

    Returns:
        Settings instance
    """
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
        logger.debug(f"Loaded settings: {_settings.model_dump()}")
    return _settings


def override_settings(**changes) -> Settings:
    """Replace the global settings with a copy carrying ``changes`` (used by the CLI and tests)."""
    global _settings
    _settings = get_settings().model_copy(update=changes)
    return _settings


def reset_settings() -> None:
    """Forget the cached settings so the next call re-reads the environment."""
    global _settings
    _settings = None
