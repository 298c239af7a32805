# molcav/utils/persistent_config.py
"""
Persistent user configuration storage.
Settings in ~/.molcav/config.json override Config defaults
(grid resolutions, fit tolerances, output root).
"""

from __future__ import annotations
import json
from pathlib import Path
from typing import Any, Dict

# Store config in user's home directory
USER_CONFIG_PATH = Path.home() / ".molcav" / "config.json"

# Keys whose values are filesystem paths
_PATH_FIELDS = ("OUTPUT_ROOT", "PRESETS_DIR")


def load_persistent_config() -> Dict[str, Any]:
    """Load persistent user configuration (empty dict when absent or unreadable)."""
    if not USER_CONFIG_PATH.exists():
        return {}

    try:
        with USER_CONFIG_PATH.open("r") as f:
            config = json.load(f)

        for key in _PATH_FIELDS:
            if key in config and config[key]:
                config[key] = Path(config[key])

        return config
    except Exception as e:
        print(f"Warning: Failed to load persistent config: {e}")
        return {}
