# molcav/physics/dynamics_helpers/bloch.py
"""
Optical Bloch equations of the incoherently pumped two-level molecule.

The vibrational levels relax in picoseconds and are eliminated: the pump
moves population |g,0> -> |e,0> at rate k_p, the excited state decays at
gamma, and the coherence decays at gamma2 = (gamma + k_p)/2 + gamma*.

Angular rates are used only in this module. With rho_eg = c:

    d rho_ee / dt = P rho_gg - G rho_ee - W Im c
    d rho_gg / dt = -d rho_ee / dt
    d c / dt      = -(G2 - i D) c + i (W/2) (rho_ee - rho_gg)

where G = 2 pi gamma, P = 2 pi k_p, G2 = 2 pi gamma2, D = 2 pi detuning and
W = 2 pi probe_rabi. The right-hand side is linear and constant, so one
fourth-order Runge-Kutta step is the matrix polynomial sum_{k<=4} (hA)^k/k!
and every step conserves rho_ee + rho_gg to rounding.
"""

from __future__ import annotations
import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from ...config import DEFAULT_CONFIG as CFG
from ...errors import DomainError, require_non_negative
from ...models.params import EmitterParams
from ...utils.log import setup_logger

log = setup_logger("physics.dynamics_helpers.bloch")

TWO_PI = 2.0 * math.pi
# Allowed excess of rho_ee + rho_gg over 1 and of |c| over 1/2
STATE_TOL = 1e-9


# =============================================================================
# State records
# =============================================================================

@dataclass(frozen=True)
class BlochState:
    """Populations of |e,0> and |g,0> and the optical coherence."""
    rho_ee: float
    rho_gg: float
    coherence: complex = 0j

    def __post_init__(self):
        for name, value in (("rho_ee", self.rho_ee), ("rho_gg", self.rho_gg)):
            if not (-STATE_TOL <= value <= 1.0 + STATE_TOL):
                raise DomainError(f"{name} must lie in [0, 1] (got {value!r})")
        if self.rho_ee + self.rho_gg > 1.0 + STATE_TOL:
            raise DomainError(
                f"rho_ee + rho_gg = {self.rho_ee + self.rho_gg!r} exceeds 1"
            )
        if abs(self.coherence) > 0.5 + STATE_TOL:
            raise DomainError(f"|coherence| = {abs(self.coherence)!r} exceeds 1/2")

    @property
    def inversion(self) -> float:
        """w = rho_ee - rho_gg."""
        return self.rho_ee - self.rho_gg

    def as_vector(self) -> np.ndarray:
        return np.array([self.rho_ee, self.rho_gg, self.coherence.real, self.coherence.imag])

    @classmethod
    def ground(cls) -> "BlochState":
        return cls(0.0, 1.0, 0j)

    @classmethod
    def after_pulse(cls, excited_population: float) -> "BlochState":
        """State left by an instantaneous pump pulse."""
        if not 0.0 <= excited_population <= 1.0:
            raise DomainError(
                f"initial excited population must lie in [0, 1] (got {excited_population!r})"
            )
        return cls(excited_population, 1.0 - excited_population, 0j)


@dataclass(frozen=True, eq=False)
class BlochTrajectory:
    """Sampled solution of the Bloch equations."""
    times: np.ndarray
    rho_ee: np.ndarray
    rho_gg: np.ndarray
    coherence: np.ndarray
    error_estimate: float

    @property
    def inversion(self) -> np.ndarray:
        return self.rho_ee - self.rho_gg

    @property
    def final(self) -> BlochState:
        return BlochState(
            float(np.clip(self.rho_ee[-1], 0.0, 1.0)),
            float(np.clip(self.rho_gg[-1], 0.0, 1.0)),
            complex(self.coherence[-1]),
        )


# =============================================================================
# Rates
# =============================================================================

def pumped_gamma2(emitter: EmitterParams, pump_rate: float) -> float:
    """Coherence decay (gamma + k_p)/2 + gamma* in Hz."""
    require_non_negative("pump_rate", pump_rate)
    return 0.5 * (emitter.gamma_fwhm + pump_rate) + emitter.pure_dephasing


def generator_matrix(
    emitter: EmitterParams,
    pump_rate: float = 0.0,
    probe_rabi: float = 0.0,
    probe_detuning: float = 0.0,
) -> np.ndarray:
    """Real 4x4 generator A of d/dt [rho_ee, rho_gg, Re c, Im c] (angular units)."""
    g = TWO_PI * emitter.gamma_fwhm
    p = TWO_PI * pump_rate
    g2 = TWO_PI * pumped_gamma2(emitter, pump_rate)
    d = TWO_PI * probe_detuning
    w = TWO_PI * probe_rabi
    return np.array([
        [-g,       p,        0.0,  -w],
        [g,        -p,       0.0,  w],
        [0.0,      0.0,      -g2,  -d],
        [0.5 * w,  -0.5 * w, d,    -g2],
    ])


def rk4_propagator(generator: np.ndarray, step: float) -> np.ndarray:
    """One classical RK4 step of the linear system x' = A x, as a matrix."""
    ha = step * generator
    term = np.eye(generator.shape[0])
    total = term.copy()
    for k in range(1, 5):
        term = term @ ha / k
        total = total + term
    return total


def max_step(emitter: EmitterParams, generator: np.ndarray) -> float:
    """Largest step: tau / ODE_STEPS_PER_LIFETIME, and at most 1/200 of the fastest rate."""
    fastest = float(np.max(np.abs(generator)))
    step = emitter.lifetime / CFG.ODE_STEPS_PER_LIFETIME
    if fastest > 0:
        step = min(step, 0.005 / fastest)
    return step


# =============================================================================
# Integration
# =============================================================================

def _propagate(
    generator: np.ndarray,
    start: np.ndarray,
    times: np.ndarray,
    h_max: float,
) -> np.ndarray:
    """States at every time, stepping each interval in equal sub-steps <= h_max."""
    out = np.empty((times.size, start.size))
    out[0] = start
    cache: Dict[Tuple[int, float], np.ndarray] = {}
    state = start
    for i in range(1, times.size):
        dt = times[i] - times[i - 1]
        n = max(1, int(math.ceil(dt / h_max - 1e-9)))
        key = (n, float(dt))
        prop = cache.get(key)
        if prop is None:
            prop = np.linalg.matrix_power(rk4_propagator(generator, dt / n), n)
            cache[key] = prop
        state = prop @ state
        out[i] = state
    return out


def integrate_bloch(
    initial: BlochState,
    times,
    emitter: EmitterParams,
    pump_rate: float = 0.0,
    probe_rabi: float = 0.0,
    probe_detuning: float = 0.0,
    step: Optional[float] = None,
) -> BlochTrajectory:
    """
    Integrate the Bloch equations from times[0] with a fixed-step RK4 scheme.

    The same trajectory is recomputed with half the step; the largest
    difference divided by 15 is returned as the Richardson error estimate,
    and a warning is logged when it exceeds ODE_RICHARDSON_TOL.

    Args:
        initial: State at times[0]
        times: Strictly increasing sample times (s)
        emitter: Molecule; gamma_fwhm and pure_dephasing enter
        pump_rate: Incoherent pump k_p (Hz)
        probe_rabi: Probe Rabi frequency (Hz); 0 for an undriven molecule
        probe_detuning: Probe minus 00ZPL (Hz)
        step: Override for the largest integrator step (s)

    Raises:
        DomainError: fewer than 2 times, or times not strictly increasing
    """
    t = np.asarray(times, dtype=float)
    if t.size < 2 or not np.all(np.diff(t) > 0):
        raise DomainError("integration times must be >= 2 strictly increasing values")

    a = generator_matrix(emitter, pump_rate, probe_rabi, probe_detuning)
    h = step if step is not None else max_step(emitter, a)
    start = initial.as_vector()

    coarse = _propagate(a, start, t, h)
    fine = _propagate(a, start, t, 0.5 * h)
    error = float(np.max(np.abs(coarse - fine))) / 15.0
    if error > CFG.ODE_RICHARDSON_TOL:
        log.warning(f"[bloch] Richardson error {error:.3e} above tolerance {CFG.ODE_RICHARDSON_TOL:.1e}")

    drift = float(np.max(np.abs(fine[:, 0] + fine[:, 1] - fine[0, 0] - fine[0, 1])))
    log.debug(f"[bloch] {t.size} samples, step {h:.3e} s, error {error:.2e}, population drift {drift:.2e}")

    return BlochTrajectory(
        times=t,
        rho_ee=fine[:, 0],
        rho_gg=fine[:, 1],
        coherence=fine[:, 2] + 1j * fine[:, 3],
        error_estimate=error,
    )


# =============================================================================
# Steady state
# =============================================================================

def steady_inversion(pump_rate, probe_rabi, probe_detuning, emitter: EmitterParams):
    """
    Steady-state w = (k_p - gamma) / (k_p + gamma + W^2 gamma2 / (gamma2^2 + d^2)).

    Vectorized over probe_detuning (Hz units throughout).
    """
    gamma = emitter.gamma_fwhm
    g2 = pumped_gamma2(emitter, pump_rate)
    d = np.asarray(probe_detuning, dtype=float)
    drive = probe_rabi ** 2 * g2 / (g2 * g2 + d * d)
    return (pump_rate - gamma) / (pump_rate + gamma + drive)


def bloch_steady_state(
    pump_rate: float,
    probe_rabi: float,
    probe_detuning: float,
    emitter: EmitterParams,
) -> BlochState:
    """
    Analytic steady state of the pumped, probed molecule.

    For a vanishing probe rho_ee = k_p/(k_p + gamma), rho_gg = gamma/(k_p + gamma).

    Raises:
        DomainError: k_p < 0
    """
    require_non_negative("pump_rate", pump_rate)
    require_non_negative("probe_rabi", probe_rabi)
    w = float(steady_inversion(pump_rate, probe_rabi, probe_detuning, emitter))
    g2 = pumped_gamma2(emitter, pump_rate)
    coherence = 1j * 0.5 * probe_rabi * w / (g2 - 1j * probe_detuning)
    return BlochState(0.5 * (1.0 + w), 0.5 * (1.0 - w), complex(coherence))
