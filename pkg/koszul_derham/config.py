# koszul_derham/config.py
import os
import logging
from functools import lru_cache
from typing import Dict, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ValidationError, field_validator

from koszul_derham.errors import ConfigurationError

logger = logging.getLogger(__name__)

# Environment variable -> settings field
ENV_FIELDS: Dict[str, str] = {
    "KDR_LOG_LEVEL": "log_level",
    "KDR_MODULAR_PRIME": "modular_prime",
    "KDR_MODULAR_MAX_ENTRIES": "modular_max_entries",
    "KDR_MAX_SLICE_COLUMNS": "max_slice_columns",
    "KDR_MAX_EXPONENT": "max_exponent",
    "KDR_SELFTEST_SAMPLES": "selftest_samples",
}


class EngineSettings(BaseModel):
    log_level: str = "WARNING"
    # 2^31 - 1; products of two residues stay inside int64
    modular_prime: int = 2147483647
    modular_max_entries: int = 4_000_000
    max_slice_columns: int = 3000
    max_exponent: int = 512
    selftest_samples: int = 100

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"unknown log level {value!r}")
        return level

    @field_validator("modular_prime")
    @classmethod
    def _prime_fits(cls, value: int) -> int:
        if value < 3 or value >= 2**31:
            raise ValueError("modular prime must lie in [3, 2^31)")
        if any(value % k == 0 for k in range(2, min(int(value**0.5) + 1, 50000))):
            raise ValueError(f"{value} is not prime")
        return value

    @field_validator("modular_max_entries", "max_slice_columns", "max_exponent", "selftest_samples")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be a positive integer")
        return value


def load_settings(env: Optional[Dict[str, str]] = None) -> EngineSettings:
    """
    Build settings from the environment (or an explicit mapping).

    Unset variables fall back to the model defaults.
    """
    if env is None:
        # Load environment variables
        load_dotenv()
        env = dict(os.environ)

    values = {field: env[key] for key, field in ENV_FIELDS.items() if env.get(key)}
    try:
        settings = EngineSettings(**values)
    except ValidationError as e:
        raise ConfigurationError(f"invalid settings: {e.errors()[0]['msg']}") from e

    logger.debug(f"Loaded settings: {settings.model_dump()}")
    return settings


@lru_cache(maxsize=1)
def get_settings() -> EngineSettings:
    return load_settings()
