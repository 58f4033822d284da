"""
Configuration loader.
Defaults, optional JSON file (mim_config.json or $MIM_CONFIG) and MIM_<KEY>
environment overrides. CLI flags are applied on top by main.py.
"""

import json
import os
import sys
from typing import Dict, Optional

BASE_DIR = os.path.dirname(os.path.abspath(__file__))
CONFIG_FILENAME = "mim_config.json"
ENV_PREFIX = "MIM_"

DEFAULTS = {
    "max_rows": 10,
    "oracle_max_edges": 40,
    "enumerate_max_vertices": 20,
    "lemma_budget_ms": 600_000,
    "table_max_cells": 2000,
    "verify_certificates": True,
    "cache_path": os.path.join(BASE_DIR, "mim_cache.duckdb"),
    "use_cache": False,
    "stretch_checks": False,
    "window_max_width": 12,
    "lemma_max_window": 10,
}


def _coerce(key: str, value, source: str):
    expected = type(DEFAULTS[key])
    if expected is bool:
        if isinstance(value, bool):
            return value
        if isinstance(value, str) and value.strip().lower() in ("1", "true", "yes", "on"):
            return True
        if isinstance(value, str) and value.strip().lower() in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"Config key '{key}' from {source} must be a boolean, got {value!r}")
    if expected is int:
        if isinstance(value, bool):
            raise ValueError(f"Config key '{key}' from {source} must be an integer, got {value!r}")
        try:
            return int(value)
        except (TypeError, ValueError):
            raise ValueError(f"Config key '{key}' from {source} must be an integer, got {value!r}")
    return str(value)


def load_config(path: Optional[str] = None) -> Dict:
    """
    Build the effective configuration.

    Args:
        path: Explicit JSON config file. Falls back to $MIM_CONFIG, then
            mim_config.json next to this module (missing file is fine).

    Returns:
        Dict with every key of DEFAULTS

    Raises:
        FileNotFoundError: If an explicit path does not exist
        ValueError: If a value has the wrong type
    """
    config = dict(DEFAULTS)

    explicit = path or os.environ.get(ENV_PREFIX + "CONFIG")
    config_path = explicit or os.path.join(BASE_DIR, CONFIG_FILENAME)
    if explicit and not os.path.exists(config_path):
        raise FileNotFoundError(f"Config file not found: {config_path}")

    if os.path.exists(config_path):
        with open(config_path, encoding="utf-8") as f:
            data = json.load(f)
        if not isinstance(data, dict):
            raise ValueError(f"Config file {config_path} must contain a JSON object")
        for key, value in data.items():
            if key not in DEFAULTS:
                print(f"WARNING: ignoring unknown config key '{key}' in {config_path}", file=sys.stderr)
                continue
            config[key] = _coerce(key, value, config_path)

    for key in DEFAULTS:
        env_value = os.environ.get(ENV_PREFIX + key.upper())
        if env_value is not None:
            config[key] = _coerce(key, env_value, f"${ENV_PREFIX}{key.upper()}")

    return config
