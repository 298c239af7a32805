# molcav/physics/control_helpers/lock_loop.py
"""
Discrete PI lock loop acting on the cavity length.

The residual displacement is x_k = d_k + u_k, with d the disturbance
(cumulative white increments plus linear drift) and u the actuator.
The controller sees a normalized error e_k ~ x_k and updates

    u_{k+1} = u_k - Kp (e_k - e_{k-1}) - Ki e_k

so the correction lands one sample later. Linearized, the closed loop
obeys x_{k+1} = (1 - Kp - Ki) x_k + Kp x_{k-1} + n_{k+1}.
"""

from __future__ import annotations
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ...errors import DomainError, StabilityError, require_non_negative, require_positive
from ...utils.log import setup_logger

log = setup_logger("physics.control_helpers.lock_loop")


@dataclass(frozen=True)
class LockConfig:
    """
    Lock-loop settings. Lengths in metres, times in seconds.

    Attributes:
        kp, ki: Proportional and integral gains (metre of correction per metre of error)
        sample_interval: Controller period
        actuator_range: Correction is clipped to +/- this value
        noise_sigma: Std of the disturbance increment per sample
        drift: Linear drift rate (m/s)
        seed: Seed of the disturbance generator
        closed_loop: False holds the actuator at zero

    The disturbance is a random walk, so the open-loop RMS has no
    stationary value: it grows roughly as sqrt(duration) (linearly with
    nonzero drift). Only closed-loop RMS values compare across durations.
    """
    kp: float = 0.0
    ki: float = 0.5
    sample_interval: float = 1e-4
    actuator_range: float = 1e-6
    noise_sigma: float = 0.0
    drift: float = 0.0
    seed: int = 0
    closed_loop: bool = True

    def __post_init__(self):
        require_positive("sample_interval", self.sample_interval)
        require_positive("actuator_range", self.actuator_range)
        require_non_negative("noise_sigma", self.noise_sigma)
        if not (math.isfinite(self.kp) and math.isfinite(self.ki) and math.isfinite(self.drift)):
            raise DomainError("lock gains and drift must be finite")


# =============================================================================
# Stability
# =============================================================================

def characteristic_roots(kp: float, ki: float) -> np.ndarray:
    """Poles of z^2 - (1 - Kp - Ki) z - Kp."""
    return np.roots([1.0, -(1.0 - kp - ki), -kp])


def check_stability(kp: float, ki: float) -> None:
    """
    Jury conditions for the linearized loop.

    Raises:
        StabilityError: naming the first violated bound
    """
    if not abs(kp) < 1.0:
        raise StabilityError(f"unstable lock gains: |Kp| < 1 violated (Kp = {kp!r})")
    if not ki > 0.0:
        raise StabilityError(f"unstable lock gains: Ki > 0 violated (Ki = {ki!r})")
    if not ki + 2.0 * kp < 2.0:
        raise StabilityError(
            f"unstable lock gains: Ki + 2 Kp < 2 violated (Ki + 2 Kp = {ki + 2.0 * kp!r})"
        )


def stability_margin(kp: float, ki: float) -> float:
    """1 - largest pole magnitude; positive inside the stability region."""
    return 1.0 - float(np.max(np.abs(characteristic_roots(kp, ki))))


def closed_loop_variance(kp: float, ki: float, noise_sigma: float) -> float:
    """Stationary variance of the linearized residual (AR(2) driven by white increments)."""
    check_stability(kp, ki)
    a1, a2 = 1.0 - kp - ki, kp
    return noise_sigma ** 2 * (1.0 - a2) / ((1.0 + a2) * ((1.0 - a2) ** 2 - a1 ** 2))


# =============================================================================
# Simulation
# =============================================================================

def disturbance(config: LockConfig, samples: int) -> np.ndarray:
    """Random walk of white increments plus linear drift, one value per sample."""
    rng = np.random.default_rng(config.seed)
    steps = config.noise_sigma * rng.standard_normal(samples)
    t = config.sample_interval * np.arange(samples)
    return np.cumsum(steps) + config.drift * t


def run_loop(
    config: LockConfig,
    error_of: Callable[[float], float],
    samples: int,
    disturbance_values: Optional[np.ndarray] = None,
) -> np.ndarray:
    """
    Residual displacement for every sample.

    Args:
        config: Gains, noise and actuator settings
        error_of: Normalized error signal as a function of residual displacement
        samples: Number of controller periods
        disturbance_values: Override for the generated disturbance
    """
    if samples < 2:
        raise DomainError(f"lock simulation needs >= 2 samples (got {samples})")
    d = disturbance(config, samples) if disturbance_values is None else disturbance_values
    residual = np.empty(samples)

    u = 0.0
    e_prev = 0.0
    limit = config.actuator_range
    clipped = 0
    for k in range(samples):
        x = d[k] + u
        residual[k] = x
        if not config.closed_loop:
            continue
        e = error_of(x)
        u = u - config.kp * (e - e_prev) - config.ki * e
        if abs(u) > limit:
            u = math.copysign(limit, u)
            clipped += 1
        e_prev = e

    if clipped:
        log.warning(f"[lock] actuator saturated on {clipped} of {samples} samples")
    return residual
