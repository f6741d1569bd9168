"""Configuration management for RadoKit."""
import json
import logging
from pathlib import Path
from typing import Annotated, Any, Optional

from pydantic import Field, TypeAdapter, ValidationError
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

from .exceptions import InvalidInput

logger = logging.getLogger(__name__)


class RadoKitConfig(BaseSettings):
    """Global RadoKit configuration.

    Values come from ``~/.radokit/config.json`` and are overridden by
    ``RADOKIT_*`` environment variables (e.g. ``RADOKIT_BUDGET``).
    """

    model_config = SettingsConfigDict(env_prefix="RADOKIT_", extra="ignore")

    budget: int = Field(default=10**8, ge=1, description="Node budget for coloring searches")
    closure_state_cap: int = Field(default=200_000, ge=1, description="State cap for the rewrite closure oracle")
    mt_block_cap: int = Field(default=1_000_000, ge=1, description="Cap on enumerated Milliken-Taylor block tuples")

    workers: int = Field(default=1, ge=0, description="Search worker processes (0 = one per CPU)")
    split_depth: int = Field(default=4, ge=1, description="Prefix length used to split the search tree")
    symmetry_breaking: bool = Field(default=True, description="Break color symmetry by first occurrence")

    cache_path: str = Field(default="~/.radokit/cache.jsonl", description="Append-only result cache")
    cache_enabled: bool = Field(default=True, description="Replay identical jobs from the cache")
    log_level: str = Field(default="INFO", description="Logging level")

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        # Environment wins over values read from the config file.
        return (env_settings, init_settings)

    @property
    def resolved_cache_path(self) -> Path:
        """Cache location with ``~`` expanded."""
        return Path(self.cache_path).expanduser()


class ConfigManager:
    """Manages loading and saving of configuration.

    Only values read from or written to the config file are persisted;
    environment overrides apply on load and are never saved.
    """

    def __init__(self, config_path: Optional[Path] = None):
        """Initialize the config manager.

        Args:
            config_path: Path to the config file. If None, uses default location.
        """
        if config_path:
            self.config_path = config_path
        else:
            self.config_path = Path.home() / ".radokit" / "config.json"

        self._config: Optional[RadoKitConfig] = None
        self._values: dict[str, Any] = {}

    @property
    def config(self) -> RadoKitConfig:
        """Get the current configuration (lazy loading)."""
        if self._config is None:
            self._load()
        return self._config  # type: ignore

    @property
    def file_values(self) -> dict[str, Any]:
        """Settings held by the config file."""
        if self._config is None:
            self._load()
        return dict(self._values)

    def _read_file(self) -> dict[str, Any]:
        if not self.config_path.exists():
            logger.debug("No config file found, using defaults")
            return {}
        try:
            with open(self.config_path, "r") as f:
                data = json.load(f)
            logger.debug(f"Configuration loaded from {self.config_path}")
            return data if isinstance(data, dict) else {}
        except json.JSONDecodeError as e:
            logger.warning(f"Invalid config file, using defaults: {e}")
            return {}

    def _load(self) -> None:
        """Load config from file, then apply environment overrides."""
        self._values = self._read_file()
        try:
            self._config = RadoKitConfig(**self._values)
        except ValidationError as e:
            logger.error(f"Invalid value in {self.config_path}, using defaults: {e.error_count()} errors")
            self._values = {}
            self._config = RadoKitConfig()

    def save(self) -> None:
        """Save config to file."""
        values = self.file_values
        self.config_path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.config_path, "w") as f:
            f.write(json.dumps(values, indent=2, sort_keys=True))
        logger.debug(f"Configuration saved to {self.config_path}")

    def update(self, **kwargs: Any) -> None:
        """Update configuration values.

        Args:
            **kwargs: Configuration values to update.

        Raises:
            InvalidInput: If a key is unknown or a value fails validation.
        """
        values = self.file_values
        for key, value in kwargs.items():
            field = RadoKitConfig.model_fields.get(key)
            if field is None:
                raise InvalidInput("config", f"unknown setting {key!r}")
            annotation = Annotated[(field.annotation, *field.metadata)] if field.metadata else field.annotation
            try:
                values[key] = TypeAdapter(annotation).validate_python(value)
            except ValidationError as e:
                raise InvalidInput(key, e.errors()[0]["msg"])
        self._values = values
        self._config = RadoKitConfig(**values)

    def reset(self) -> None:
        """Reset configuration to defaults."""
        self._values = {}
        self._config = RadoKitConfig()


# Lazy singleton pattern
_config_instance: Optional[ConfigManager] = None


def get_config_manager() -> ConfigManager:
    """Get the global config manager instance (lazy initialization)."""
    global _config_instance
    if _config_instance is None:
        _config_instance = ConfigManager()
    return _config_instance


def get_config() -> RadoKitConfig:
    """Get the current configuration."""
    return get_config_manager().config


def reset_config() -> None:
    """Reset the global config instance. Useful for testing."""
    global _config_instance
    _config_instance = None
