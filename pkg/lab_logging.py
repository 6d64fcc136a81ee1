"""Logging set-up for the command-line front end."""

import logging
from typing import Optional

from lab_config import LoggingConfig
from lab_errors import ConfigurationError


def configure_logging(config: Optional[LoggingConfig] = None, verbose: bool = False) -> None:
    """
    Configure the root logger once for a CLI run.

    Args:
        config: Logging configuration (loaded from the environment when omitted)
        verbose: Lower the level to INFO regardless of the configured level
    """
    config = config or LoggingConfig.from_env()
    level = logging.getLevelName(config.level)
    if not isinstance(level, int):
        raise ConfigurationError('LAB_LOG_LEVEL', config.level, "unknown log level")
    if verbose:
        level = min(level, logging.INFO)
    logging.basicConfig(level=level, format=config.format, force=True)
