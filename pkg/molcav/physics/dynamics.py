# molcav/physics/dynamics.py
"""
Pump-dependent and time-domain models.

CW probe transmission of the incoherently pumped molecule, the
amplification curve versus pump rate, pulsed emission with and without a
resonant probe, and the stimulated-emission difference trace.
"""

from __future__ import annotations
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from ..config import DEFAULT_CONFIG as CFG
from ..errors import DomainError, require_non_negative, require_positive
from ..models.params import SystemParams
from ..models.trace import Trace
from ..utils.log import setup_logger
from .dynamics_helpers.bloch import (
    BlochState,
    bloch_steady_state,
    integrate_bloch,
    pumped_gamma2,
    steady_inversion,
)
from .dynamics_helpers.irf import InstrumentResponse, convolve_piecewise_linear
from .spectra_helpers.lineshapes import gain_percent, pumped_line_factor

log = setup_logger("physics.dynamics")

# Pulsed traces must extend at least this many lifetimes past the arrival
MIN_WINDOW_LIFETIMES = 5.0


@dataclass(frozen=True)
class PulseConfig:
    """Instantaneous picosecond pump pulse."""
    arrival_time: float = 0.0
    initial_excited_population: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.arrival_time):
            raise DomainError("pulse arrival time must be finite")
        if not 0.0 <= self.initial_excited_population <= 1.0:
            raise DomainError(
                f"initial excited population must lie in [0, 1] "
                f"(got {self.initial_excited_population!r})"
            )


# =============================================================================
# CW pumping
# =============================================================================

def probe_transmission_with_pump(
    probe_sweep,
    pump_rate: float,
    system: SystemParams,
    probe_rabi: float = 0.0,
) -> Trace:
    """
    Probe transmission T = [1 - beta alpha (rho_gg - rho_ee) Lambda]^2 under CW pumping.

    Lambda(d) = (gamma/2) gamma2 / (gamma2^2 + d^2) with gamma2 = (gamma + k_p)/2 + gamma*.

    Args:
        probe_sweep: Probe detuning from the 00ZPL (Hz)
        pump_rate: k_p (Hz)
        system: Molecule-cavity parameters
        probe_rabi: Probe Rabi frequency (Hz); 0 neglects probe saturation

    Raises:
        DomainError: k_p < 0
    """
    require_non_negative("pump_rate", pump_rate)
    emitter = system.emitter
    x = np.asarray(probe_sweep, dtype=float)
    w = steady_inversion(pump_rate, probe_rabi, x, emitter)
    lam = pumped_line_factor(x, emitter.gamma_fwhm, pumped_gamma2(emitter, pump_rate))
    y = (1.0 + system.beta_alpha * w * lam) ** 2
    return Trace(
        x, y,
        x_label="probe_detuning", x_unit="Hz",
        y_label="transmission", y_unit="",
        tags={"pump_rate_hz": repr(float(pump_rate))},
    )


def amplification_curve(pump_sweep, system: SystemParams) -> Trace:
    """Resonant T(k_p) - 1 in percent."""
    k = np.asarray(pump_sweep, dtype=float)
    if np.any(k < 0):
        raise DomainError("pump rates must be >= 0")
    emitter = system.emitter
    y = gain_percent(k, emitter.gamma_fwhm, emitter.pure_dephasing, system.beta_alpha)
    return Trace(
        k, y,
        x_label="pump_rate", x_unit="Hz",
        y_label="gain", y_unit="%",
    )


def peak_gain_pump_rate(gamma: float, pure_dephasing: float = 0.0) -> float:
    """k_p of the CW gain maximum: 2 gamma + sqrt(4 gamma^2 + 4 gamma gamma*) - gamma."""
    require_positive("gamma", gamma)
    require_non_negative("pure_dephasing", pure_dephasing)
    u = 2.0 * gamma + math.sqrt(4.0 * gamma * gamma + 4.0 * gamma * pure_dephasing)
    return u - gamma


def max_gain_percent(system: SystemParams) -> float:
    """Largest CW transmission gain in percent over all pump rates."""
    emitter = system.emitter
    k = peak_gain_pump_rate(emitter.gamma_fwhm, emitter.pure_dephasing)
    return float(gain_percent(k, emitter.gamma_fwhm, emitter.pure_dephasing, system.beta_alpha))


def dephasing_for_peak_gain(target_percent: float, system: SystemParams) -> float:
    """
    Pure dephasing gamma* that caps the CW gain maximum at target_percent.

    Searches gamma* in [0, 100 gamma].

    Raises:
        DomainError: target not reachable in that range
    """
    gamma = system.emitter.gamma_fwhm

    def excess(gamma_star: float) -> float:
        return max_gain_percent(system.with_pure_dephasing(gamma_star)) - target_percent

    upper = 100.0 * gamma
    lo, hi = excess(0.0), excess(upper)
    if not (hi < 0.0 <= lo):
        raise DomainError(
            f"target gain {target_percent!r}% outside the reachable range "
            f"({hi + target_percent:.4g}%, {lo + target_percent:.4g}%]"
        )
    if lo == 0.0:
        return 0.0
    gamma_star = float(brentq(excess, 0.0, upper, xtol=1e-9 * gamma, rtol=1e-12))
    log.debug(f"[dynamics] gamma* = {gamma_star:.4e} Hz caps CW gain at {target_percent}%")
    return gamma_star


# =============================================================================
# Pulsed response
# =============================================================================

def default_time_grid(lifetime: float, arrival_time: float = 0.0) -> np.ndarray:
    """Uniform grid from PULSE_PRE_WINDOW_S before the arrival to PULSE_WINDOW_LIFETIMES after."""
    require_positive("lifetime", lifetime)
    dt = CFG.TIME_GRID_STEP_S
    start = arrival_time - CFG.PULSE_PRE_WINDOW_S
    stop = arrival_time + CFG.PULSE_WINDOW_LIFETIMES * lifetime
    n = int(round((stop - start) / dt)) + 1
    return start + dt * np.arange(n)


def _population_knots(pulse: PulseConfig, system: SystemParams, grid: np.ndarray):
    """Knot times and populations with a jump at the arrival."""
    arrival = pulse.arrival_time
    before = grid[grid < arrival]
    after = grid[grid > arrival]

    post = BlochState.after_pulse(pulse.initial_excited_population)
    times = np.concatenate([[arrival], after])
    traj = integrate_bloch(post, times, system.emitter)

    knots = np.concatenate([before, [arrival], times])
    ee = np.concatenate([np.zeros(before.size + 1), traj.rho_ee])
    gg = np.concatenate([np.ones(before.size + 1), traj.rho_gg])
    return knots, ee, gg


def _detected_signal(ee, gg, probe_on: bool, probe_detuning: float, system: SystemParams,
                     emission_amplitude: float, probe_background: float):
    signal = emission_amplitude * ee
    if probe_on:
        emitter = system.emitter
        lam = float(pumped_line_factor(probe_detuning, emitter.gamma_fwhm, emitter.gamma2))
        signal = signal + probe_background * (1.0 + system.beta_alpha * (ee - gg) * lam) ** 2
    return signal


def pulsed_response(
    pulse: PulseConfig,
    probe_on: bool,
    system: SystemParams,
    irf: Optional[InstrumentResponse],
    grid,
    *,
    probe_detuning: float = 0.0,
    emission_amplitude: float = 1.0,
    probe_background: float = 1.0,
) -> Trace:
    """
    Detected counts after a picosecond pump pulse.

    counts = A rho_ee(t) + B [1 + beta alpha (rho_ee - rho_gg)(t) Lambda(probe)]^2,
    the second term only with the probe on, convolved with the IRF.

    Args:
        pulse: Arrival time and deposited excited population
        probe_on: Add the transmitted CW probe
        system: Molecule-cavity parameters (the emitter sets the lifetime)
        irf: Gaussian detector response, or None for an ideal detector
        grid: Uniform output times (s)
        probe_detuning: Probe minus 00ZPL (Hz)
        emission_amplitude: A, counts per unit excited population
        probe_background: B, transmitted probe counts far from resonance

    Raises:
        DomainError: grid starts after the pulse or ends < 5 lifetimes after it
    """
    t = np.asarray(grid, dtype=float)
    tau = system.emitter.lifetime
    if t.size < 2 or t[0] > pulse.arrival_time:
        raise DomainError("time grid must start at or before the pulse arrival")
    if t[-1] - pulse.arrival_time < MIN_WINDOW_LIFETIMES * tau:
        raise DomainError(
            f"time grid ends {(t[-1] - pulse.arrival_time) / tau:.2f} lifetimes after the pulse; "
            f"need >= {MIN_WINDOW_LIFETIMES}"
        )

    knots, ee, gg = _population_knots(pulse, system, t)
    values = _detected_signal(ee, gg, probe_on, probe_detuning, system,
                              emission_amplitude, probe_background)
    y = convolve_piecewise_linear(knots, values, irf, t)

    log.debug(
        f"[dynamics] pulsed response: probe_on={probe_on}, detuning={probe_detuning:.3e} Hz, "
        f"irf={'none' if irf is None else f'{irf.fwhm:.2e} s'}"
    )
    return Trace(
        t, y,
        x_label="time", x_unit="s",
        y_label="counts", y_unit="arb",
    )


def stimulated_difference(
    pulse: PulseConfig,
    system: SystemParams,
    irf: Optional[InstrumentResponse],
    grid,
    *,
    off_resonance: Optional[float] = None,
) -> Trace:
    """
    Probe on resonance minus probe off resonance.

    Negative while the molecule attenuates, positive while it is inverted.
    """
    offset = CFG.PROBE_OFF_RESONANCE_HZ if off_resonance is None else off_resonance
    on = pulsed_response(pulse, True, system, irf, grid, probe_detuning=0.0)
    off = pulsed_response(pulse, True, system, irf, grid, probe_detuning=offset)
    return on.with_y(on.y - off.y, y_label="stimulated_difference")


def first_zero_crossing(trace: Trace, start: Optional[float] = None, falling: bool = True) -> float:
    """
    Time of the first sign change after start, linearly interpolated.

    Args:
        falling: Look for a positive-to-negative crossing; otherwise the reverse

    Raises:
        DomainError: no such crossing
    """
    x, y = trace.x, trace.y
    begin = 0 if start is None else int(np.searchsorted(x, start, side="left"))
    a, b = y[begin:-1], y[begin + 1:]
    hits = np.nonzero((a > 0) & (b <= 0) if falling else (a < 0) & (b >= 0))[0]
    if hits.size == 0:
        raise DomainError("trace has no zero crossing in the requested direction")
    i = begin + int(hits[0])
    return float(x[i] + (x[i + 1] - x[i]) * y[i] / (y[i] - y[i + 1]))


def steady_state(pump_rate: float, system: SystemParams, probe_rabi: float = 0.0,
                 probe_detuning: float = 0.0) -> BlochState:
    """bloch_steady_state for the system's emitter."""
    return bloch_steady_state(pump_rate, probe_rabi, probe_detuning, system.emitter)
