"""
Configuration module for delocalization-power.

Handles reading and writing configuration to ~/.dlp/config.json.
Values set here override the library defaults; explicit CLI flags override both.
"""

import json
from pathlib import Path
from typing import Any, Dict, Optional

# Library defaults, keyed with the same dot notation as the config file.
DEFAULTS: Dict[str, float] = {
    "TOLERANCES.rank": 1e-8,
    "TOLERANCES.structure": 1e-6,
    "TOLERANCES.verify": 1e-9,
    "TOLERANCES.unitary": 1e-10,
    "TOLERANCES.p_floor": 1e-12,
    "SIMULATION.trials": 50,
    "SIMULATION.seed": 0,
    "SIMULATION.workers": 1,
    "EPOWER.restarts": 64,
}


def get_config_path() -> Path:
    """Returns the path to the configuration file.

    Returns:
        Path: The path to ~/.dlp/config.json.
    """
    return Path.home() / ".dlp" / "config.json"


def load_config() -> dict:
    """Loads the existing configuration.

    Returns:
        dict: The loaded configuration or an empty dictionary if it doesn't exist or is invalid.
    """
    config_path: Path = get_config_path()

    if not config_path.exists():
        return {}

    try:
        with open(config_path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except (json.JSONDecodeError, IOError):
        return {}
    return data if isinstance(data, dict) else {}


def save_config(config: dict) -> None:
    """Saves the given configuration to the file.

    Args:
        config: The dictionary containing the configuration to save.
    """
    config_path: Path = get_config_path()
    config_path.parent.mkdir(parents=True, exist_ok=True)

    with open(config_path, "w", encoding="utf-8") as f:
        json.dump(config, f, indent=2, ensure_ascii=False, sort_keys=True)


def set_config_value(key: str, value: str) -> None:
    """Sets a value in the configuration.

    Supports dot notation for nested keys (e.g., "TOLERANCES.structure").

    Args:
        key (str): The key to set.
        value (str): The value to assign; stored as given, parsed on read.
    """
    config: dict = load_config()
    keys: list = key.split(".")

    current: Any = config
    for k in keys[:-1]:
        if k not in current or not isinstance(current[k], dict):
            current[k] = {}
        current = current[k]
    current[keys[-1]] = value

    save_config(config)


def get_config_value(key: str) -> Optional[str]:
    """Retrieves a value from the configuration.

    Supports dot notation for nested keys (e.g., "SIMULATION.seed").

    Returns:
        Optional[str]: The stored leaf value, or None if it does not exist or is a section.
    """
    current: Any = load_config()
    for k in key.split("."):
        if not isinstance(current, dict) or k not in current:
            return None
        current = current[k]

    return current if not isinstance(current, dict) else None


def get_config_float(key: str, fallback: Optional[float] = None) -> Optional[float]:
    """Reads ``key`` as a float; missing or unparsable values give ``fallback``.

    When ``fallback`` is None the library default for ``key`` is used.
    """
    if fallback is None:
        fallback = DEFAULTS.get(key)
    raw = get_config_value(key)
    if raw is None:
        return fallback
    try:
        return float(raw)
    except (TypeError, ValueError):
        return fallback


def get_config_int(key: str, fallback: Optional[int] = None) -> Optional[int]:
    """Reads ``key`` as an integer; missing or unparsable values give ``fallback``."""
    if fallback is None and key in DEFAULTS:
        fallback = int(DEFAULTS[key])
    raw = get_config_value(key)
    if raw is None:
        return fallback
    try:
        return int(str(raw).strip())
    except (TypeError, ValueError):
        return fallback


def flatten_config(config: Optional[dict] = None, prefix: str = "") -> Dict[str, Any]:
    """Flattens nested sections into dot-notation keys (used by ``dlp config list``)."""
    if config is None:
        config = load_config()
    flat: Dict[str, Any] = {}
    for key, value in config.items():
        full_key = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(flatten_config(value, f"{full_key}."))
        else:
            flat[full_key] = value
    return flat
