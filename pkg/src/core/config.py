"""
raeperf - Core Configuration Module

This module handles toolkit-wide defaults and settings management for the
raeperf resource estimation toolkit. Settings come from constructor keyword
arguments and, optionally, a JSON configuration file. Environment variables
are deliberately not consulted so that runs are reproducible from their
command line and config file alone.
"""

import json
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from pydantic import Field
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

from src.core.exceptions import ConfigurationError


class Settings(BaseSettings):
    """Toolkit settings and numerical defaults."""

    model_config = SettingsConfigDict(extra="forbid", case_sensitive=False, frozen=True)

    # Application Settings
    app_name: str = "raeperf"
    app_version: str = "1.0.0"
    log_level: str = "INFO"
    json_logs: bool = False

    # Bayesian inference
    grid_points: int = Field(2001, ge=3)
    validation_grid_points: int = Field(20001, ge=3)
    prior_sd: float = Field(0.01, gt=0)
    prior_mean_jitter_sd: float = Field(0.01, ge=0)
    trials: int = Field(50, ge=1)
    trim_fraction: float = Field(0.1, ge=0, lt=1)
    min_layer_fidelity: float = Field(0.9, gt=0, le=1)

    # Surface code
    cycle_time: float = Field(1e-6, gt=0)
    cycles_per_gate_per_distance: float = Field(100.0, gt=0)
    physical_gate_error: float = Field(1e-3, gt=0, lt=1)
    max_distance: int = Field(51, ge=3)

    # Prediction
    target_rmse: float = Field(1e-3, gt=0)
    fit_max_iterations: int = Field(10_000, ge=1)

    # Performance
    max_workers: int = Field(4, ge=1)

    # Output
    significant_digits: int = Field(9, ge=1, le=17)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type,
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings,)

    @property
    def float_format(self) -> str:
        """printf-style float format used for CSV output."""
        return f"%.{self.significant_digits}g"


def read_config_file(config_path: Union[str, Path]) -> Dict[str, Any]:
    """
    Read a JSON configuration file into a flat dictionary.

    Args:
        config_path: Path to the JSON file

    Returns:
        Dict of configuration values keyed by option name
    """
    path = Path(config_path)
    if not path.exists():
        raise ConfigurationError(f"Config file not found: {path}")
    try:
        with open(path, "r") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"Config file {path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ConfigurationError(f"Config file {path} must contain a JSON object")
    # option names may be written with dashes as on the command line
    return {str(key).replace("-", "_"): value for key, value in data.items()}


def load_settings(config_path: Optional[Union[str, Path]] = None, **overrides: Any) -> Settings:
    """
    Build settings from an optional JSON file plus keyword overrides.

    Keys in the file that are not settings fields are ignored here; run
    configuration models validate them separately.
    """
    values: Dict[str, Any] = {}
    if config_path is not None:
        file_values = read_config_file(config_path)
        values.update({k: v for k, v in file_values.items() if k in Settings.model_fields})
    values.update({k: v for k, v in overrides.items() if v is not None})
    return Settings(**values)


_active_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get toolkit settings."""
    global _active_settings
    if _active_settings is None:
        _active_settings = Settings()
    return _active_settings


def use_settings(settings: Optional[Settings]) -> Settings:
    """Install ``settings`` as the active settings (None restores the defaults)."""
    global _active_settings
    _active_settings = settings
    return get_settings()
