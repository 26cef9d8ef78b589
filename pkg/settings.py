#!/usr/bin/env python3

"""
Solver settings module

Loads search budgets, worker count and log level from a dotenv-style file.
The process environment is deliberately not read: the command line tool is
configured through its settings file and flags only.
"""

import os
import logging
from typing import Dict, Optional

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError

logger = logging.getLogger(__name__)

DEFAULT_ENV_FILE = ".planecolour.env"

# Default solver settings
DEFAULT_NODE_BUDGET = 5_000_000
DEFAULT_ENUM_LIMIT = 100_000
DEFAULT_RETRY_BUDGET = 200
DEFAULT_WORKERS = 1
DEFAULT_LOG_LEVEL = "WARNING"

_KEYS = {
    "PLANECOLOUR_NODE_BUDGET": "node_budget",
    "PLANECOLOUR_ENUM_LIMIT": "enum_limit",
    "PLANECOLOUR_RETRY_BUDGET": "retry_budget",
    "PLANECOLOUR_WORKERS": "workers",
    "PLANECOLOUR_LOG_LEVEL": "log_level",
}


class SolverSettings(BaseModel):
    model_config = ConfigDict(frozen=True)

    node_budget: int = Field(DEFAULT_NODE_BUDGET, ge=1)
    enum_limit: int = Field(DEFAULT_ENUM_LIMIT, ge=1)
    retry_budget: int = Field(DEFAULT_RETRY_BUDGET, ge=1)
    workers: int = Field(DEFAULT_WORKERS, ge=1)
    log_level: str = DEFAULT_LOG_LEVEL

    def with_overrides(self, **overrides) -> "SolverSettings":
        """Copy with command line overrides applied (None means keep)"""
        changes = {k: v for k, v in overrides.items() if v is not None}
        return self.model_validate({**self.model_dump(), **changes})


def load_solver_settings(env_file: Optional[str] = DEFAULT_ENV_FILE) -> SolverSettings:
    """
    Load solver settings from a dotenv file

    Each key is validated on its own, so one bad value only falls back to its
    default and a warning is logged.

    Args:
        env_file: Path of the settings file; a missing file yields the defaults

    Returns:
        SolverSettings
    """
    raw: Dict[str, Optional[str]] = {}
    if env_file and os.path.exists(env_file):
        raw = dotenv_values(env_file)
        logger.info(f"Loaded solver settings from {env_file}")

    values = {}
    for key, field in _KEYS.items():
        value = raw.get(key)
        if value is None or value == "":
            continue
        try:
            SolverSettings.model_validate({field: value})
        except ValidationError as e:
            logger.warning(f"⚠️ Ignoring {key}={value!r}: {e.errors()[0]['msg']}")
            continue
        values[field] = value.upper() if field == "log_level" else value

    settings = SolverSettings.model_validate(values)
    if not isinstance(logging.getLevelName(settings.log_level), int):
        logger.warning(f"⚠️ Unknown log level {settings.log_level}, using {DEFAULT_LOG_LEVEL}")
        settings = settings.with_overrides(log_level=DEFAULT_LOG_LEVEL)
    return settings


if __name__ == "__main__":
    print("Testing solver settings...")
    print(load_solver_settings().model_dump())
