# molcav/physics/dynamics_helpers/__init__.py
"""
Time-domain building blocks for physics.dynamics.

- bloch: Bloch equations of the pumped molecule, RK4 propagation, steady state
- irf: Gaussian instrument response and exact piecewise-linear convolution
- photon_stats: g2 helpers
"""

from .bloch import (
    BlochState,
    BlochTrajectory,
    bloch_steady_state,
    integrate_bloch,
    pumped_gamma2,
)
from .irf import InstrumentResponse, convolve_piecewise_linear, convolve_sampled, emg
from .photon_stats import g2_background, g2_trace, g2_weak_drive, signal_fraction_from_g2

__all__ = [
    "BlochState",
    "BlochTrajectory",
    "bloch_steady_state",
    "integrate_bloch",
    "pumped_gamma2",
    "InstrumentResponse",
    "convolve_piecewise_linear",
    "convolve_sampled",
    "emg",
    "g2_background",
    "g2_trace",
    "g2_weak_drive",
    "signal_fraction_from_g2",
]
