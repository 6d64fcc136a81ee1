"""
Tests for configuration loading and logging set-up
"""

import logging

import pytest

from lab_config import CategoryConfig, LabConfig, LoggingConfig, ResolutionConfig, SuiteConfig, parse_window
from lab_errors import ConfigurationError
from lab_logging import configure_logging


def test_parse_window():
    assert parse_window("-1,2") == (-1, 2)
    assert parse_window(" 0 , 1 ") == (0, 1)
    for raw in ("1,2", "-1,0", "-1", "a,b", "-1,2,3"):
        with pytest.raises(ConfigurationError) as info:
            parse_window(raw)
        assert info.value.exit_code == 4


def test_defaults(monkeypatch):
    for name in ("LAB_FIELD", "LAB_MAX_INDECOMPOSABLES", "LAB_HOM_WINDOW", "LAB_DEPTH", "LAB_WORKERS"):
        monkeypatch.delenv(name, raising=False)
    config = LabConfig.from_env()
    assert config.field.field == "32003"
    assert config.category.max_indecomposables == 400
    assert config.category.hom_window == (-1, 2)
    assert config.resolution.depth is None
    assert config.resolution.depth_for(3) == 10
    assert config.suite.workers == 1


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("LAB_MAX_INDECOMPOSABLES", "50")
    monkeypatch.setenv("LAB_DEPTH", "7")
    monkeypatch.setenv("LAB_GORENSTEIN_SHORTCUT", "false")
    monkeypatch.setenv("LAB_WORKERS", "3")
    assert CategoryConfig.from_env().max_indecomposables == 50
    resolution = ResolutionConfig.from_env()
    assert resolution.depth_for(5) == 7
    assert not resolution.gorenstein_shortcut
    assert SuiteConfig.from_env().workers == 3


@pytest.mark.parametrize("name, value", [
    ("LAB_MAX_INDECOMPOSABLES", "many"),
    ("LAB_DEPTH", "1"),
    ("LAB_WORKERS", "0"),
    ("LAB_SEED", "1.5"),
])
def test_invalid_values(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ConfigurationError):
        LabConfig.from_env()


def test_configure_logging(monkeypatch):
    monkeypatch.setenv("LAB_LOG_LEVEL", "error")
    configure_logging()
    assert logging.getLogger().level == logging.ERROR
    configure_logging(LoggingConfig.from_env(), verbose=True)
    assert logging.getLogger().level == logging.INFO
    monkeypatch.setenv("LAB_LOG_LEVEL", "chatty")
    with pytest.raises(ConfigurationError):
        configure_logging()
