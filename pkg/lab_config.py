"""
Workbench Configuration Module

This module provides configuration classes for every layer of the workbench,
loading settings from environment variables with sensible defaults. Nothing
here is required: command-line flags override these values, and the defaults
reproduce the documented behaviour.
"""

import os
from typing import Optional, Tuple

from lab_errors import ConfigurationError


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() == 'true'


def _env_int(name: str, default: str, minimum: Optional[int] = None) -> int:
    raw = os.getenv(name, default)
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(name, raw, "not an integer")
    if minimum is not None and value < minimum:
        raise ConfigurationError(name, raw, f"must be at least {minimum}")
    return value


def parse_window(raw: str, variable: str = 'LAB_HOM_WINDOW') -> Tuple[int, int]:
    """
    Parse an orbit-degree window such as "-1,2".

    Args:
        raw: Two comma-separated integers, low then high
        variable: Setting name used in error messages

    Returns:
        Tuple (low, high) with low <= 0 <= 1 <= high
    """
    parts = [part.strip() for part in raw.split(',')]
    if len(parts) != 2:
        raise ConfigurationError(variable, raw, "expected two comma-separated integers")
    try:
        low, high = int(parts[0]), int(parts[1])
    except ValueError:
        raise ConfigurationError(variable, raw, "window bounds must be integers")
    if low > 0 or high < 1:
        raise ConfigurationError(variable, raw, "window must contain the degrees 0 and 1")
    return low, high


class FieldConfig:
    """Configuration for the base field"""

    def __init__(self):
        self.field: str = os.getenv('LAB_FIELD', '32003')

    @classmethod
    def from_env(cls) -> 'FieldConfig':
        """Load configuration from environment variables"""
        return cls()


class CategoryConfig:
    """Configuration for building cluster categories"""

    def __init__(self):
        self.max_indecomposables: int = _env_int('LAB_MAX_INDECOMPOSABLES', '400', minimum=1)
        self.hom_window: Tuple[int, int] = parse_window(os.getenv('LAB_HOM_WINDOW', '-1,2'))
        self.verify_coherence: bool = _env_bool('LAB_VERIFY_COHERENCE', 'true')
        self.triangle_checks: bool = _env_bool('LAB_TRIANGLE_CHECKS', 'false')
        self.associativity_sample: int = _env_int('LAB_ASSOCIATIVITY_SAMPLE', '200', minimum=0)

    @classmethod
    def from_env(cls) -> 'CategoryConfig':
        """Load configuration from environment variables"""
        return cls()


class ResolutionConfig:
    """Configuration for projective resolutions over End(T)"""

    def __init__(self):
        raw_depth = os.getenv('LAB_DEPTH')
        self.depth: Optional[int] = None
        if raw_depth:
            self.depth = _env_int('LAB_DEPTH', raw_depth, minimum=2)
        self.gorenstein_shortcut: bool = _env_bool('LAB_GORENSTEIN_SHORTCUT', 'true')

    @classmethod
    def from_env(cls) -> 'ResolutionConfig':
        """Load configuration from environment variables"""
        return cls()

    def depth_for(self, rank: int) -> int:
        """Resolution depth for a category of the given rank (default 2n + 4)."""
        if self.depth is not None:
            return self.depth
        return 2 * rank + 4


class SuiteConfig:
    """Configuration for verification suites"""

    def __init__(self):
        self.seed: int = _env_int('LAB_SEED', '0')
        self.decomposable_sample: int = _env_int('LAB_DECOMPOSABLE_SAMPLE', '1000', minimum=0)
        self.workers: int = _env_int('LAB_WORKERS', '1', minimum=1)
        self.output_dir: str = os.getenv('LAB_OUTPUT_DIR', 'reports')

    @classmethod
    def from_env(cls) -> 'SuiteConfig':
        """Load configuration from environment variables"""
        return cls()


class LoggingConfig:
    """Configuration for log output"""

    def __init__(self):
        self.level: str = os.getenv('LAB_LOG_LEVEL', 'WARNING').upper()
        self.format: str = os.getenv(
            'LAB_LOG_FORMAT', '%(asctime)s %(levelname)s %(name)s: %(message)s'
        )

    @classmethod
    def from_env(cls) -> 'LoggingConfig':
        """Load configuration from environment variables"""
        return cls()


class LabConfig:
    """Master workbench configuration"""

    def __init__(self):
        self.field = FieldConfig.from_env()
        self.category = CategoryConfig.from_env()
        self.resolution = ResolutionConfig.from_env()
        self.suite = SuiteConfig.from_env()
        self.logging = LoggingConfig.from_env()

    @classmethod
    def from_env(cls) -> 'LabConfig':
        """Load all workbench configuration from environment variables"""
        return cls()
