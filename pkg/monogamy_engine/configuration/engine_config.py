"""
Module to implement the engine configuration, read from a `config.ini` file.
"""


import configparser
import logging
from dataclasses import dataclass, replace
from pathlib import Path

from monogamy_engine.errors.config_errors import IllegalConfigurationError


DEFAULT_CONFIG_FILEPATH = Path(__file__).resolve().parents[2] / 'config.ini'


@dataclass(frozen = True)
class EngineConfig:
    """
    A class to implement the numerical settings shared by the engine's calculators.
    """

    classical_budget : int = 2 ** 24
    chunk_size : int = 65536
    threads : int = 1
    search_max_parts : int = 0
    search_budget : int = 50_000_000
    log_level : int = logging.WARNING


    def __post_init__(self) -> None:
        for name in ('classical_budget', 'chunk_size', 'threads', 'search_budget'):
            if getattr(self, name) < 1:
                raise IllegalConfigurationError(f'"{name}" must be a positive integer, got {getattr(self, name)}')

        if self.search_max_parts < 0:
            raise IllegalConfigurationError(f'"search_max_parts" must be non-negative, got {self.search_max_parts}')


    @classmethod
    def from_file(cls, config_filepath : str | Path | None = None) -> 'EngineConfig':
        """
        Method to read the configuration from a `config.ini` file, falling back to defaults for missing keys.

        Args:
            config_filepath (str | Path | None): the path of the configuration file (root `config.ini` when None).

        Returns:
            The validated configuration.
        """
        config_filepath = Path(config_filepath) if config_filepath is not None else DEFAULT_CONFIG_FILEPATH

        config_parser = configparser.ConfigParser()

        if config_filepath.exists():
            config_parser.read(config_filepath)
        elif config_filepath != DEFAULT_CONFIG_FILEPATH:
            raise IllegalConfigurationError(f'Configuration file not found: {config_filepath}')

        defaults = cls()

        try:
            return cls(
                classical_budget = config_parser.getint('bounds', 'classical_budget', fallback = defaults.classical_budget),
                chunk_size = config_parser.getint('bounds', 'chunk_size', fallback = defaults.chunk_size),
                threads = config_parser.getint('bounds', 'threads', fallback = defaults.threads),
                search_max_parts = config_parser.getint('search', 'max_parts', fallback = defaults.search_max_parts),
                search_budget = config_parser.getint('search', 'budget', fallback = defaults.search_budget),
                log_level = parse_log_level(config_parser.get('logging', 'level', fallback = 'WARNING')),
            )
        except ValueError as error:
            raise IllegalConfigurationError(f'Invalid value in {config_filepath}: {error}') from error


    def with_overrides(self, **overrides) -> 'EngineConfig':
        """
        Method to build a copy of the configuration with the non-None overrides applied.
        """
        return replace(self, **{key : value for key, value in overrides.items() if value is not None})


def parse_log_level(level_name : str) -> int:
    """
    Function to translate a level name (e.g. "DEBUG") into a `logging` level.
    """
    level = logging.getLevelName(level_name.strip().upper())

    if not isinstance(level, int):
        raise IllegalConfigurationError(f'Unknown log level: {level_name}')

    return level
