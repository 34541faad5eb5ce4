"""
Configuration management.
"""
from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application configuration."""

    # Field construction
    max_table_order: int = 2 ** 20

    # Rank search
    search_mode: str = "exhaustive"
    search_budget: int = 10_000
    search_seed: int = 0
    search_threads: int = 1
    max_exhaustive_candidates: int = 2 ** 32
    early_exit: bool = True
    show_progress: bool = False

    # Table ingestion
    bilinearity_exhaustive_order: int = 2 ** 8
    bilinearity_samples: int = 10_000

    # Geometry
    max_spread_elements: int = 10_000

    # Output
    output_format: str = "jsonl"
    include_timing: bool = True
    reports_dir: Path = Path("reports")
    log_level: str = "INFO"

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="SEMIBEL_",
        extra="ignore"
    )


settings = Settings()
