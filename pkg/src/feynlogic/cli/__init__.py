"""
Command-line front end and experiment description files.
"""

from .config import (
    FeynlogicConfig,
    LoadedConfig,
    build_config,
    bundled_configs,
    load,
    load_config,
    parse_config,
)

from .main import cli, main

__all__ = [
    # Config
    'FeynlogicConfig',
    'LoadedConfig',
    'build_config',
    'bundled_configs',
    'load',
    'load_config',
    'parse_config',

    # Entry point
    'cli',
    'main',
]
