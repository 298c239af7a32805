# molcav/physics/spectra_helpers/__init__.py
"""
Building blocks for the steady-state spectra models.

- lineshapes: vectorized Lorentzian, Gaussian and coupled-cavity kernels
- ensemble: inhomogeneous molecule ensembles and their line sums
"""

from .lineshapes import (
    FOUR_LN2,
    coupled_transmission,
    eq1_transmission,
    gain_percent,
    gaussian,
    lorentzian,
    pumped_line_factor,
    resonant_gain_factor,
)
from .ensemble import Molecule, MoleculeEnsemble, line_heights, line_widths, sum_lines

__all__ = [
    "FOUR_LN2",
    "coupled_transmission",
    "eq1_transmission",
    "gain_percent",
    "gaussian",
    "lorentzian",
    "pumped_line_factor",
    "resonant_gain_factor",
    "Molecule",
    "MoleculeEnsemble",
    "line_heights",
    "line_widths",
    "sum_lines",
]
