"""
Configuration module for delocalization-power.

Re-exports configuration functions.
"""

from .config import (
    DEFAULTS,
    flatten_config,
    get_config_float,
    get_config_int,
    get_config_path,
    get_config_value,
    load_config,
    save_config,
    set_config_value,
)

__all__ = [
    "DEFAULTS",
    "get_config_path",
    "load_config",
    "save_config",
    "set_config_value",
    "get_config_value",
    "get_config_float",
    "get_config_int",
    "flatten_config",
]
