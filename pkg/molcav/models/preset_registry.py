# molcav/models/preset_registry.py
"""
PresetRegistry: bundled parameter files by name.

Consolidates preset lookup for the CLI and the scenarios:
- Preset name normalization and aliases (paper -> paper_params)
- Path resolution inside PRESETS_DIR
- Cached loading of the validated ParameterFile

Usage:
    from molcav.models.preset_registry import get_registry

    registry = get_registry()
    params = registry.load("degraded")     # paper_params_degraded.json
    system = params.system
"""

from __future__ import annotations
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Set

from ..utils.log import setup_logger
from .parameter_file import ParameterFile, load_parameter_file

log = setup_logger("models.preset_registry")


class PresetName(Enum):
    """Parameter files shipped with the package."""
    PAPER = "paper_params"
    DEGRADED = "paper_params_degraded"

    @classmethod
    def values(cls) -> Set[str]:
        return {p.value for p in cls}


_PRESET_ALIASES: Dict[str, str] = {
    "paper": "paper_params",
    "reference": "paper_params",
    "degraded": "paper_params_degraded",
    "finesse100": "paper_params_degraded",
}


@dataclass
class PresetRegistry:
    """
    Registry of bundled parameter files.

    Files are looked up in presets_dir (default: io_paths.presets_dir()) and
    loaded once per registry instance.
    """

    presets_dir: Optional[Path] = None
    _cache: Dict[str, ParameterFile] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        # Lazy import to avoid circular dependency
        from ..io_paths import presets_dir

        if self.presets_dir is None:
            self.presets_dir = presets_dir()

    # -------------------------------------------------------------------------
    # Names
    # -------------------------------------------------------------------------

    def normalize(self, name: str) -> str:
        """Canonical file stem for a preset name or alias (unknown names pass through)."""
        if not name:
            return name
        stem = Path(name).stem if name.endswith(".json") else name
        if stem in _PRESET_ALIASES:
            return _PRESET_ALIASES[stem]
        lower = stem.lower()
        for alias, canonical in _PRESET_ALIASES.items():
            if alias == lower:
                return canonical
        return stem

    def available(self) -> List[str]:
        """Stems of every parameter file in the presets directory."""
        if not self.presets_dir.is_dir():
            return []
        return sorted(p.stem for p in self.presets_dir.glob("*.json"))

    def is_valid(self, name: str) -> bool:
        return self.path(name).is_file()

    def path(self, name: str) -> Path:
        return self.presets_dir / f"{self.normalize(name)}.json"

    # -------------------------------------------------------------------------
    # Loading
    # -------------------------------------------------------------------------

    def load(self, name: str) -> ParameterFile:
        """
        Validated parameter file for a preset.

        Raises:
            ValueError: If the preset does not exist
            ConfigValidationError: If the bundled file fails validation
        """
        key = self.normalize(name)
        if key in self._cache:
            return self._cache[key]
        path = self.path(key)
        if not path.is_file():
            raise ValueError(f"Unknown preset: {name}. Available: {self.available()}")
        params = load_parameter_file(path)
        self._cache[key] = params
        log.debug(f"[PresetRegistry] Loaded {key} from {path}")
        return params

    def __repr__(self) -> str:
        return f"PresetRegistry(dir={self.presets_dir}, presets={self.available()})"


# Module-level singleton for convenience
_default_registry: Optional[PresetRegistry] = None


def get_registry() -> PresetRegistry:
    """Get the default PresetRegistry singleton."""
    global _default_registry
    if _default_registry is None:
        _default_registry = PresetRegistry()
    return _default_registry


def reset_registry() -> None:
    """
    Reset the PresetRegistry singleton.

    Call this after config changes so PRESETS_DIR is re-read and presets
    are loaded again on next access.
    """
    global _default_registry
    _default_registry = None
    log.debug("[PresetRegistry] Singleton reset - will reload on next access")
