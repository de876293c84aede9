"""Runtime settings loaded from the environment and optional .env files."""

import logging
import os
from functools import lru_cache
from typing import Literal

from dotenv import dotenv_values
from pydantic import BaseModel, Field, ValidationError, field_validator

from qunit.errors import ConfigError

logger = logging.getLogger(__name__)

ENV_FILES = ('.env', '.env.local')


class Settings(BaseModel):
  """Tolerances and guards used across the services."""

  structural_tol: float = Field(default=1e-10, gt=0)
  verdict_tol: float = Field(default=1e-8, gt=0)
  max_levels: int = Field(default=4, ge=2, le=6)
  log_level: Literal['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'] = 'WARNING'

  @field_validator('log_level', mode='before')
  @classmethod
  def _upper(cls, value):
    return value.upper() if isinstance(value, str) else value


_ENV_KEYS = {
  'structural_tol': 'QUNIT_STRUCTURAL_TOL',
  'verdict_tol': 'QUNIT_VERDICT_TOL',
  'max_levels': 'QUNIT_MAX_LEVELS',
  'log_level': 'QUNIT_LOG_LEVEL',
}


def load_settings() -> Settings:
  """Build settings from QUNIT_* variables.

  Precedence is the process environment, then .env.local, then .env.
  """
  file_values: dict[str, str | None] = {}
  for filepath in ENV_FILES:
    file_values.update(dotenv_values(filepath))

  raw = {}
  for field, key in _ENV_KEYS.items():
    value = os.getenv(key) or file_values.get(key)
    if value:
      raw[field] = value
  try:
    settings = Settings.model_validate(raw)
  except ValidationError as e:
    problems = '; '.join(
      f'{_ENV_KEYS[str(err["loc"][0])]}: {err["msg"]}' for err in e.errors() if err['loc']
    )
    raise ConfigError(f'Invalid settings: {problems}') from e

  logger.debug(f'Loaded settings: {settings.model_dump()}')
  return settings


@lru_cache(maxsize=1)
def get_settings() -> Settings:
  """Process-wide settings, read once."""
  return load_settings()
