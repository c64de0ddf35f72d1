"""Settings read from the environment and `.env`, all prefixed `INFCHESS_`."""

from functools import lru_cache
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

PROJECT_ROOT = Path(__file__).resolve().parents[2]


class Settings(BaseSettings):
    fixture_dir: Path = Field(default=PROJECT_ROOT / "fixtures", validation_alias="INFCHESS_FIXTURE_DIR")

    mate_in: int = Field(default=6, ge=1, validation_alias="INFCHESS_MATE_IN")
    horizon: int = Field(default=40, ge=1, validation_alias="INFCHESS_HORIZON")
    node_limit: int = Field(default=10_000_000, ge=1, validation_alias="INFCHESS_NODE_LIMIT")

    workers: int = Field(default=1, ge=1, validation_alias="INFCHESS_WORKERS")
    locale: str = Field(default="en", validation_alias="INFCHESS_LOCALE")

    log_level: str = Field(default="WARNING", validation_alias="INFCHESS_LOG_LEVEL")
    debug: bool = Field(default=False, validation_alias="INFCHESS_DEBUG")

    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", extra="ignore")


@lru_cache
def get_settings() -> Settings:
    """Settings are read once per process; tests clear the cache."""
    return Settings()
