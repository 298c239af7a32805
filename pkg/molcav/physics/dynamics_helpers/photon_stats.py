# molcav/physics/dynamics_helpers/photon_stats.py
"""
Second-order correlation helpers for a single weakly driven emitter.
"""

from __future__ import annotations
import math

import numpy as np

from ...errors import DomainError, require_non_negative, require_positive, require_unit_interval
from ...models.trace import Trace


def g2_background(signal_fraction: float, g2_ideal: float) -> float:
    """
    Measured g2(0) with a Poissonian background: 1 + rho^2 (g2_ideal - 1).

    Raises:
        DomainError: signal_fraction outside [0, 1] or g2_ideal < 0
    """
    require_unit_interval("signal_fraction", signal_fraction)
    require_non_negative("g2_ideal", g2_ideal)
    return 1.0 + signal_fraction ** 2 * (g2_ideal - 1.0)


def signal_fraction_from_g2(g2_measured: float, g2_ideal: float = 0.0) -> float:
    """Inverse of g2_background: rho = sqrt((1 - g2_meas) / (1 - g2_ideal))."""
    require_non_negative("g2_measured", g2_measured)
    if not g2_ideal < 1.0:
        raise DomainError(f"g2_ideal must be < 1 to infer a signal fraction (got {g2_ideal!r})")
    if g2_measured > 1.0:
        raise DomainError(f"measured g2(0) = {g2_measured!r} > 1 is not antibunched")
    return math.sqrt((1.0 - g2_measured) / (1.0 - g2_ideal))


def g2_weak_drive(tau, gamma: float):
    """
    g2(tau) = [1 - exp(-pi gamma tau)]^2 of a weakly driven two-level emitter.

    Raises:
        DomainError: gamma <= 0 or a negative delay
    """
    require_positive("gamma", gamma)
    t = np.asarray(tau, dtype=float)
    if np.any(t < 0):
        raise DomainError("delay tau must be >= 0; use g2_trace for signed delays")
    result = (1.0 - np.exp(-math.pi * gamma * t)) ** 2
    return float(result) if result.ndim == 0 else result


def g2_trace(delays, gamma: float, signal_fraction: float = 1.0) -> Trace:
    """g2 over signed delays, including a Poissonian background of 1 - signal_fraction."""
    require_unit_interval("signal_fraction", signal_fraction)
    d = np.asarray(delays, dtype=float)
    ideal = g2_weak_drive(np.abs(d), gamma)
    y = 1.0 + signal_fraction ** 2 * (ideal - 1.0)
    return Trace(
        d, y,
        x_label="delay", x_unit="s",
        y_label="g2", y_unit="",
        tags={"signal_fraction": repr(float(signal_fraction))},
    )
