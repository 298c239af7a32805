# molcav/models/__init__.py
"""
Data models for the molecule-cavity toolkit.

- params: immutable cavity, emitter, coupling and drive records
- trace: sampled 1-D data with units and CSV round trip
- parameter_file: unit-suffixed parameter files and their validation
- preset_registry: bundled parameter files by name

parameter_file and preset_registry depend on the physics package and are
imported from their modules directly.
"""

from .params import CavityParams, CouplingParams, DriveParams, EmitterParams, SystemParams
from .trace import Trace, write_traces_csv

__all__ = [
    "CavityParams",
    "CouplingParams",
    "DriveParams",
    "EmitterParams",
    "SystemParams",
    "Trace",
    "write_traces_csv",
]
