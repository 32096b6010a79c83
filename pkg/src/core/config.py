# src/core/config.py
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    LOG_LEVEL: str = "WARNING"
    LOG_FILE: Optional[str] = None
    DEFAULT_LIB: str = "fpga"
    TIME_TOLERANCE_NS: float = 1e-9
    REPORT_DECIMALS: int = 3
    DEFAULT_SEED: int = 1
    MAX_SYNC_DEPTH: int = 8

    model_config = SettingsConfigDict(
        env_prefix="TIMINGLENS_",
        env_file=".env",
        extra="ignore",
    )


settings = Settings()
