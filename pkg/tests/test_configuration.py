import logging

import pytest

from monogamy_engine.configuration.engine_config import EngineConfig, parse_log_level
from monogamy_engine.errors.config_errors import IllegalConfigurationError


def test_repository_configuration_matches_the_defaults():
    assert EngineConfig.from_file() == EngineConfig()


def test_configuration_file_values(tmp_path):
    path = tmp_path / 'config.ini'
    path.write_text('[bounds]\nthreads = 4\n\n[search]\nmax_parts = 3\n\n[logging]\nlevel = debug\n', encoding = 'utf-8')

    config = EngineConfig.from_file(path)

    assert config.threads == 4
    assert config.search_max_parts == 3
    assert config.log_level == logging.DEBUG
    assert config.classical_budget == EngineConfig().classical_budget


@pytest.mark.parametrize('content', [
    '[bounds]\nthreads = 0\n',
    '[bounds]\nchunk_size = many\n',
    '[search]\nmax_parts = -1\n',
    '[logging]\nlevel = LOUD\n',
])
def test_invalid_configuration_files(tmp_path, content):
    path = tmp_path / 'config.ini'
    path.write_text(content, encoding = 'utf-8')

    with pytest.raises(IllegalConfigurationError):
        EngineConfig.from_file(path)


def test_missing_explicit_file_is_an_error(tmp_path):
    with pytest.raises(IllegalConfigurationError):
        EngineConfig.from_file(tmp_path / 'absent.ini')


def test_overrides_skip_missing_values():
    config = EngineConfig().with_overrides(classical_budget = 10, threads = None)

    assert config.classical_budget == 10
    assert config.threads == 1


def test_log_level_names():
    assert parse_log_level(' info ') == logging.INFO

    with pytest.raises(IllegalConfigurationError):
        parse_log_level('chatty')
