# molcav/__init__.py
"""Simulation and fitting toolkit for single molecules in tunable microcavities."""

from .config import Config, DEFAULT_CONFIG

__version__ = "0.3.0"

__all__ = ["Config", "DEFAULT_CONFIG", "__version__"]
