"""
Runtime settings for feynlogic.

Settings are read from environment variables once and cached in a
module-level instance. Tests replace it with set_settings().

Environment Variables:
    FEYNLOGIC_SEED: Default seed for every randomized command (default 20240101)
    FEYNLOGIC_LOG_LEVEL: Logging level name for the CLI (default WARNING)
    FEYNLOGIC_MC_RUNS: Default Monte-Carlo run count (default 100000)
    FEYNLOGIC_AXIOM_SAMPLES: Default axiom sample count (default 10000)
"""

from __future__ import annotations

import logging
import os
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

logger = logging.getLogger(__name__)

DEFAULT_SEED = 20240101


class Settings(BaseModel):
    """Validated runtime settings."""

    model_config = ConfigDict(frozen=True)

    seed: int = Field(default=DEFAULT_SEED, ge=0)
    log_level: str = "WARNING"
    mc_runs: int = Field(default=100_000, ge=1)
    axiom_samples: int = Field(default=10_000, ge=1)

    @classmethod
    def from_env(cls) -> "Settings":
        """
        Build settings from the process environment.

        Returns:
            Settings with defaults for every unset variable

        Raises:
            ValueError: If a variable is set but invalid
        """
        raw = {
            "seed": os.getenv("FEYNLOGIC_SEED"),
            "log_level": os.getenv("FEYNLOGIC_LOG_LEVEL"),
            "mc_runs": os.getenv("FEYNLOGIC_MC_RUNS"),
            "axiom_samples": os.getenv("FEYNLOGIC_AXIOM_SAMPLES"),
        }
        values = {k: v for k, v in raw.items() if v not in (None, "")}
        if "log_level" in values:
            values["log_level"] = values["log_level"].upper()
        try:
            return cls(**values)
        except ValidationError as e:
            logger.error(f"Invalid feynlogic environment settings: {e}")
            raise ValueError(f"Invalid feynlogic environment settings: {e}") from e


# Global settings instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """
    Get the global settings instance, reading the environment on first use.

    Returns:
        The cached Settings instance
    """
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
        logger.debug(f"Loaded settings: {_settings}")
    return _settings


def set_settings(settings: Optional[Settings]) -> None:
    """
    Replace the global settings instance.

    Args:
        settings: Settings to use, or None to re-read the environment on next access
    """
    global _settings
    _settings = settings
    logger.debug(f"Set settings: {settings}")
