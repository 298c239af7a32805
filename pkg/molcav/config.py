# molcav/config.py
"""
Application configuration for the molcav simulation toolkit.

Physical parameters live in scenario parameter files (see
models/parameter_file.py). This module only carries numerical and
bookkeeping settings: grid resolutions, integrator and optimizer
tolerances, output locations. Every field can be overridden from
~/.molcav/config.json.
"""

from __future__ import annotations
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any

# Import persistent config loader
try:
    from molcav.utils.persistent_config import load_persistent_config
    _PERSISTENT_CONFIG = load_persistent_config()
except ImportError:
    _PERSISTENT_CONFIG = {}


def _get_config_value(key: str, default: Any) -> Any:
    """Get config value from persistent storage or use default."""
    return _PERSISTENT_CONFIG.get(key, default)


@dataclass
class Config:
    # --- Logging ---
    LOG_LEVEL: str = field(default_factory=lambda: _get_config_value('LOG_LEVEL', 'INFO'))

    # --- Paths ---
    PROJECT_ROOT: Path = Path(__file__).resolve().parents[1]
    PRESETS_DIR: Path = field(
        default_factory=lambda: Path(
            _get_config_value('PRESETS_DIR', Path(__file__).resolve().parent / "presets")
        )
    )
    OUTPUT_ROOT: Path = field(
        default_factory=lambda: Path(_get_config_value('OUTPUT_ROOT', 'molcav_runs'))
    )

    # --- Spectral grids ---
    SPECTRUM_POINTS: int = field(default_factory=lambda: int(_get_config_value('SPECTRUM_POINTS', 2001)))
    # Probe sweep half-span for single-molecule lineshapes (Hz)
    SPECTRUM_HALF_SPAN_HZ: float = field(
        default_factory=lambda: _get_config_value('SPECTRUM_HALF_SPAN_HZ', 500e6)
    )
    ENSEMBLE_GRID_STEP_HZ: float = field(
        default_factory=lambda: _get_config_value('ENSEMBLE_GRID_STEP_HZ', 20e6)
    )
    ENSEMBLE_HALF_SPAN_HZ: float = field(
        default_factory=lambda: _get_config_value('ENSEMBLE_HALF_SPAN_HZ', 750e9)
    )
    MODE_MAP_POINTS: int = field(default_factory=lambda: int(_get_config_value('MODE_MAP_POINTS', 201)))
    AMPLIFICATION_POINTS: int = field(
        default_factory=lambda: int(_get_config_value('AMPLIFICATION_POINTS', 401))
    )
    SATURATION_POINTS: int = field(default_factory=lambda: int(_get_config_value('SATURATION_POINTS', 201)))

    # --- Time-domain grids ---
    # 5 ps keeps piecewise-linear sampling of a 3 ns decay below 1e-6 relative
    TIME_GRID_STEP_S: float = field(default_factory=lambda: _get_config_value('TIME_GRID_STEP_S', 5e-12))
    PULSE_WINDOW_LIFETIMES: float = field(
        default_factory=lambda: _get_config_value('PULSE_WINDOW_LIFETIMES', 8.0)
    )
    PULSE_PRE_WINDOW_S: float = field(
        default_factory=lambda: _get_config_value('PULSE_PRE_WINDOW_S', 2e-9)
    )

    # --- Bloch integrator ---
    ODE_STEPS_PER_LIFETIME: int = field(
        default_factory=lambda: int(_get_config_value('ODE_STEPS_PER_LIFETIME', 1000))
    )
    ODE_RICHARDSON_TOL: float = field(
        default_factory=lambda: _get_config_value('ODE_RICHARDSON_TOL', 1e-9)
    )
    IRF_FWHM_S: float = field(default_factory=lambda: _get_config_value('IRF_FWHM_S', 0.5e-9))
    IRF_KERNEL_SIGMAS: float = field(default_factory=lambda: _get_config_value('IRF_KERNEL_SIGMAS', 8.0))
    PROBE_OFF_RESONANCE_HZ: float = field(
        default_factory=lambda: _get_config_value('PROBE_OFF_RESONANCE_HZ', 10e9)
    )

    # --- Fitting ---
    FIT_FTOL: float = field(default_factory=lambda: _get_config_value('FIT_FTOL', 1e-10))
    FIT_GTOL: float = field(default_factory=lambda: _get_config_value('FIT_GTOL', 1e-12))
    FIT_MAX_ITER: int = field(default_factory=lambda: int(_get_config_value('FIT_MAX_ITER', 200)))
    FIT_LAMBDA_INIT: float = field(default_factory=lambda: _get_config_value('FIT_LAMBDA_INIT', 1e-3))
    FIT_LAMBDA_UP: float = field(default_factory=lambda: _get_config_value('FIT_LAMBDA_UP', 10.0))
    FIT_LAMBDA_DOWN: float = field(default_factory=lambda: _get_config_value('FIT_LAMBDA_DOWN', 10.0))
    FIT_LAMBDA_MAX: float = field(default_factory=lambda: _get_config_value('FIT_LAMBDA_MAX', 1e16))
    # Envelope fits treat a filtered pedestal below this fraction of the trace maximum as absent
    ENVELOPE_MIN_PEDESTAL: float = field(
        default_factory=lambda: _get_config_value('ENVELOPE_MIN_PEDESTAL', 0.01)
    )

    # --- Cavity control ---
    LOCK_SAMPLE_INTERVAL_S: float = field(
        default_factory=lambda: _get_config_value('LOCK_SAMPLE_INTERVAL_S', 1e-4)
    )
    LOCK_DURATION_S: float = field(default_factory=lambda: _get_config_value('LOCK_DURATION_S', 1.0))
    MODULATION_SAMPLES_PER_PERIOD: int = field(
        default_factory=lambda: int(_get_config_value('MODULATION_SAMPLES_PER_PERIOD', 100))
    )
    MODULATION_CYCLES: int = field(default_factory=lambda: int(_get_config_value('MODULATION_CYCLES', 10)))

    # --- Batch runs ---
    # 0 = derive from CPU count
    DEFAULT_JOBS: int = field(default_factory=lambda: int(_get_config_value('DEFAULT_JOBS', 0)))


DEFAULT_CONFIG = Config()


def reload_config() -> None:
    """
    Reload persistent config and update DEFAULT_CONFIG in-place.

    Updates the existing DEFAULT_CONFIG object rather than replacing it,
    so all modules that imported it as CFG see the new values.
    """
    global _PERSISTENT_CONFIG

    try:
        from molcav.utils.persistent_config import load_persistent_config
        _PERSISTENT_CONFIG = load_persistent_config()
    except ImportError:
        _PERSISTENT_CONFIG = {}

    new_config = Config()

    for f in fields(Config):
        if not f.name.startswith('_'):
            setattr(DEFAULT_CONFIG, f.name, getattr(new_config, f.name))
