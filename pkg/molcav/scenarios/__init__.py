# molcav/scenarios/__init__.py

"""Scenarios package - one runnable computation per figure panel."""

from . import parameters, spectroscopy, fano, gain, modulation, lock

from enum import Enum

class ScenarioName(Enum):
    """Enumeration of all scenarios in run order."""
    PARAMS  = "params"
    FIG3A   = "fig3a"
    FIG3B   = "fig3b"
    FIG3C   = "fig3c"
    FIG3D   = "fig3d"
    FIG3E   = "fig3e"
    FIG4A   = "fig4a"
    FIG4B   = "fig4b"
    FIG4C   = "fig4c"
    FIG4D   = "fig4d"
    FIG4E   = "fig4e"
    FIG5A   = "fig5a"
    FIG5B   = "fig5b"
    FIG5C   = "fig5c"
    FIG5D   = "fig5d"
    FIG5E   = "fig5e"
    FIG5F   = "fig5f"
    FIG6A   = "fig6a"
    FIG6B   = "fig6b"
    LOCK    = "lock"

__all__ = [
    "ScenarioName",
    "parameters",
    "spectroscopy",
    "fano",
    "gain",
    "modulation",
    "lock",
]
