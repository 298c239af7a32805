# molcav/physics/control_helpers/__init__.py
"""
Building blocks for physics.cavity_control.

- jones: Jones vectors, wave plates, cavity eigenmode projection
- lock_loop: discrete PI loop, stability bounds, disturbance model
- modulation: length modulation settings and one-sided power spectra
"""

from .jones import JonesVector, quarter_wave_plate, rotation
from .lock_loop import LockConfig, check_stability, closed_loop_variance, stability_margin
from .modulation import ModulationConfig, one_sided_power

__all__ = [
    "JonesVector",
    "quarter_wave_plate",
    "rotation",
    "LockConfig",
    "check_stability",
    "closed_loop_variance",
    "stability_margin",
    "ModulationConfig",
    "one_sided_power",
]
