"""Runtime settings for the digit toolkit.

Settings come from environment variables, optionally loaded from a ``.env``
file at the project root. Every operation that reads a setting also accepts an
explicit keyword override, so library calls stay fully determined by their
arguments.
"""

import logging
import os
from functools import lru_cache
from pathlib import Path

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

logger = logging.getLogger(__name__)

project_root = Path(__file__).parent.parent
env_path = project_root / ".env"

ENV_PREFIX = "BENFORD_"


class Settings(BaseModel):
    """Tunable limits and grid sizes."""

    tabulation_grid: int = Field(
        4096, ge=2, description="Ordinates per unit interval for tabulated overlaps"
    )
    transform_grid: int = Field(
        1024, ge=2, description="Ordinates per piece when mapping g to the density of Y"
    )
    max_block_length: int = Field(
        4, ge=1, description="Longest digit block enumerated in full"
    )
    max_blocks: int = Field(
        10_000, ge=1, description="Largest base-b block enumeration"
    )
    chunk_size: int = Field(
        65_536, ge=1, description="Draws per independently seeded sampling chunk"
    )
    default_seed: int = Field(42, ge=0, description="Seed used when none is given")
    log_level: str = Field("WARNING", description="Level for the CLI log handler")


def _read_environment() -> dict[str, str]:
    values = {}
    for name in Settings.model_fields:
        raw = os.getenv(f"{ENV_PREFIX}{name.upper()}")
        if raw is not None:
            values[name] = raw
    return values


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Load settings once per process.

    Returns:
        Settings built from ``BENFORD_*`` environment variables.

    Raises:
        ValueError: If an environment variable holds an invalid value.
    """
    load_dotenv(dotenv_path=env_path)
    try:
        settings = Settings.model_validate(_read_environment())
    except ValidationError as e:
        raise ValueError(f"Invalid {ENV_PREFIX}* environment setting: {e}") from e
    logger.debug(f"Loaded settings: {settings.model_dump()}")
    return settings
