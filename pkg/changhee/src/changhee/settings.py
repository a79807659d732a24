"""
Layered harness configuration: packaged YAML defaults, then CHANGHEE_*
environment variables (and .env), then a --config file (key=value lines or YAML), then CLI flags.
"""
import io
import logging
import re
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Type

import yaml
from dotenv import dotenv_values
from pydantic import Field, ValidationError, model_validator
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
    YamlConfigSettingsSource,
)

from .errors import ConfigError
from .identities.report import Grid

logger = logging.getLogger(__name__)

HARNESS_CONFIG = Path(__file__).resolve().parent / "config" / "harness.yaml"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


class HarnessSettings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="CHANGHEE_",
        env_file=".env",
        extra="ignore",
        yaml_file=HARNESS_CONFIG,
    )

    n_max: int = Field(12, ge=0)
    k_max: int = Field(6, ge=1)
    truncation: Optional[int] = Field(None, ge=0)
    format: OutputFormat = OutputFormat.JSON
    out: Optional[Path] = None
    jobs: int = Field(1, ge=1)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        # earlier sources win
        return init_settings, env_settings, dotenv_settings, YamlConfigSettingsSource(settings_cls)

    @model_validator(mode="after")
    def _truncation_covers_grid(self):
        if self.truncation is not None and self.truncation < self.n_max:
            raise ValueError(f"truncation {self.truncation} is below n_max {self.n_max}")
        return self

    @property
    def grid(self) -> Grid:
        return Grid(n_max=self.n_max, k_max=self.k_max)

    @property
    def effective_truncation(self) -> int:
        return self.truncation if self.truncation is not None else self.n_max + 4


_KEY_VALUE_LINE = re.compile(r"^\s*(?:export\s+)?[A-Za-z_]\w*\s*=")


def _is_key_value(text: str) -> bool:
    lines = [line for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    return bool(lines) and all(_KEY_VALUE_LINE.match(line) for line in lines)


def read_config_file(path: Path) -> Dict[str, Any]:
    """``key=value`` lines or a flat ``key: value`` YAML mapping; unknown keys are rejected."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    if _is_key_value(text):
        # an empty value means "use the default"
        data: Any = {key: value for key, value in dotenv_values(stream=io.StringIO(text)).items() if value}
    else:
        try:
            data = yaml.safe_load(text) or {}
        except yaml.YAMLError as exc:
            raise ConfigError(f"config file {path} is not valid YAML: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold key=value lines or a key: value mapping")
    unknown = sorted(set(data) - set(HarnessSettings.model_fields))
    if unknown:
        raise ConfigError(f"unknown keys in {path}: {', '.join(unknown)}")
    return data


def load_settings(config_path: Optional[Path] = None, overrides: Optional[Dict[str, Any]] = None) -> HarnessSettings:
    """Build settings; ``overrides`` holds CLI flags, where None means "not given"."""
    values: Dict[str, Any] = {}
    if config_path is not None:
        values.update(read_config_file(Path(config_path)))
        logger.info("loaded harness config from %s", config_path)
    values.update({key: value for key, value in (overrides or {}).items() if value is not None})
    try:
        return HarnessSettings(**values)
    except ValidationError as exc:
        details = "; ".join(f"{'.'.join(map(str, e['loc'])) or 'settings'}: {e['msg']}" for e in exc.errors())
        raise ConfigError(f"invalid harness configuration: {details}") from exc
