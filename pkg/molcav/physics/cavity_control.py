# molcav/physics/cavity_control.py
"""
Polarization and actuation models of the crystal cavity.

Cross-polarized detection through the birefringent cavity, the
Hansch-Couillaud error signal, the cavity-length lock loop and the
response to a sinusoidal length modulation with its harmonics.
"""

from __future__ import annotations
import math
from dataclasses import dataclass, replace
from typing import Dict, Iterable, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from ..errors import DomainError, require_positive, require_unit_interval
from ..models.params import CavityParams
from ..models.trace import Trace
from ..utils.log import setup_logger
from .control_helpers.jones import (
    JonesVector,
    analyzer_fraction,
    hc_balanced_difference,
    through_cavity,
)
from .control_helpers.lock_loop import (
    LockConfig,
    check_stability,
    closed_loop_variance,
    run_loop,
    stability_margin,
)
from .control_helpers.modulation import (
    ModulationConfig,
    harmonic_bins,
    levels_db,
    one_sided_power,
    reference_power,
    whole_periods,
)
from .parameter_algebra import detuning_to_length, length_to_detuning
from .spectra import bare_cavity_transmission

log = setup_logger("physics.cavity_control")

FLANK_POINTS = ("half_max", "max_slope", "peak")


# =============================================================================
# Cross-polarized detection
# =============================================================================

def mode_response(detuning, kappa: float):
    """Complex transmission amplitude (kappa/2) / (kappa/2 + i d) of one cavity mode."""
    hw = 0.5 * kappa
    return hw / (hw + 1j * np.asarray(detuning, dtype=float))


def birefringent_responses(
    probe_detuning: float,
    cavity: CavityParams,
    cavity_detuning: float = 0.0,
) -> Tuple[complex, complex]:
    """
    Complex responses (r_a, r_b) of the two eigenmodes at the probe.

    The b mode sits at cavity_detuning from the 00ZPL, the a mode a further
    per_axis_offset away.
    """
    d_b = probe_detuning - cavity_detuning
    r_b = complex(mode_response(d_b, cavity.kappa_fwhm))
    r_a = complex(mode_response(d_b - cavity.per_axis_offset, cavity.kappa_fwhm))
    return r_a, r_b


def cross_polarized_throughput(
    input_angle_deg: float,
    analyzer_angle_deg: float,
    axis_angle_deg: float,
    response_a: complex,
    response_b: complex,
    relative_to_input: bool = False,
) -> float:
    """
    Fraction of the cavity output flux passed by the analyzer.

    The input couples to each eigenmode by projection onto its axis
    (b at 0 deg, a at axis_angle_deg), each mode applies its response and
    the analyzer projects the recombined field.

    The default normalization is to the flux leaving the cavity, so cavity
    loss cancels: equal responses with an aligned analyzer give 1 whatever
    their magnitude. relative_to_input=True divides by the unit input flux
    instead and so carries |r|^2.
    """
    for name, value in (("input angle", input_angle_deg), ("analyzer angle", analyzer_angle_deg),
                        ("axis angle", axis_angle_deg)):
        if not math.isfinite(value):
            raise DomainError(f"{name} must be finite")
    field = JonesVector.from_angle(input_angle_deg)
    out = through_cavity(field, axis_angle_deg, response_a, response_b)
    if relative_to_input:
        return abs(out.project(analyzer_angle_deg)) ** 2
    return analyzer_fraction(out, analyzer_angle_deg)


# =============================================================================
# Hansch-Couillaud error signal
# =============================================================================

def _check_efficiency(coupling_efficiency: float) -> None:
    require_unit_interval("coupling_efficiency", coupling_efficiency, open_low=True)


def hc_reflection(detuning, cavity: CavityParams, coupling_efficiency: float = 1.0):
    """One-port reflection r = 1 - eta kappa / (kappa/2 + i d)."""
    _check_efficiency(coupling_efficiency)
    kappa = cavity.kappa_fwhm
    return 1.0 - coupling_efficiency * kappa / (0.5 * kappa + 1j * np.asarray(detuning, dtype=float))


def hc_error_signal(detuning, cavity: CavityParams, coupling_efficiency: float = 1.0):
    """
    Dispersive error eps = -Im r = -eta kappa d / ((kappa/2)^2 + d^2).

    Odd in d, zero on resonance, extrema at |d| = kappa/2 and slope
    -4 eta / kappa at the lock point.

    Raises:
        DomainError: coupling_efficiency outside (0, 1]
    """
    _check_efficiency(coupling_efficiency)
    kappa = cavity.kappa_fwhm
    d = np.asarray(detuning, dtype=float)
    result = -coupling_efficiency * kappa * d / (0.25 * kappa * kappa + d * d)
    return float(result) if result.ndim == 0 else result


def hc_error_signal_jones(
    detuning,
    cavity: CavityParams,
    coupling_efficiency: float = 1.0,
    polarizer_deg: float = 20.0,
):
    """Balanced-detector signal from the Jones model; equals sin(2 theta) x hc_error_signal."""
    if math.isclose(math.sin(2.0 * math.radians(polarizer_deg)), 0.0, abs_tol=1e-12):
        raise DomainError("polarizer aligned with a cavity axis gives no Hansch-Couillaud signal")
    r = np.atleast_1d(hc_reflection(detuning, cavity, coupling_efficiency))
    result = np.array([hc_balanced_difference(complex(v), polarizer_deg) for v in r])
    return float(result[0]) if np.ndim(detuning) == 0 else result


def hc_slope(cavity: CavityParams, coupling_efficiency: float = 1.0) -> float:
    """d eps / d displacement at the lock point (per metre)."""
    return -4.0 * coupling_efficiency / cavity.kappa_fwhm * cavity.resonance_freq / cavity.effective_length


# =============================================================================
# Lock loop
# =============================================================================

@dataclass(frozen=True, eq=False)
class LockRun:
    residual: Trace
    rms: float


def lock_stability_margin(kp: float, ki: float) -> float:
    """1 - largest closed-loop pole magnitude (0 on the stability boundary)."""
    return stability_margin(kp, ki)


def lock_simulate(
    config: LockConfig,
    cavity: CavityParams,
    duration: float,
    coupling_efficiency: float = 1.0,
) -> LockRun:
    """
    Residual cavity displacement under the PI lock.

    The controller sees the full nonlinear Hansch-Couillaud curve,
    normalized by its lock-point slope so that e ~ x near resonance.

    Raises:
        StabilityError: closed-loop gains outside the stability region
    """
    require_positive("duration", duration)
    _check_efficiency(coupling_efficiency)
    if config.closed_loop:
        check_stability(config.kp, config.ki)

    samples = int(round(duration / config.sample_interval))
    slope = hc_slope(cavity, coupling_efficiency)

    def error_of(x: float) -> float:
        return hc_error_signal(length_to_detuning(x, cavity), cavity, coupling_efficiency) / slope

    residual = run_loop(config, error_of, samples)
    rms = float(np.sqrt(np.mean(residual * residual)))
    times = config.sample_interval * np.arange(samples)

    log.debug(
        f"[lock] {'closed' if config.closed_loop else 'open'} loop, {samples} samples, "
        f"rms={rms * 1e9:.4f} nm"
    )
    trace = Trace(
        times, residual,
        x_label="time", x_unit="s",
        y_label="residual_displacement", y_unit="m",
        tags={"loop": "closed" if config.closed_loop else "open"},
    )
    return LockRun(trace, rms)


def calibrate_lock_noise(
    target_rms: float,
    config: LockConfig,
    cavity: CavityParams,
    duration: float,
) -> float:
    """
    Disturbance sigma per sample for which the closed-loop RMS hits target_rms.

    Starts from the linearized stationary variance and refines on the
    simulated loop with the configured seed.
    """
    require_positive("target_rms", target_rms)
    unit_var = closed_loop_variance(config.kp, config.ki, 1.0)
    estimate = target_rms / math.sqrt(unit_var)

    def excess(sigma: float) -> float:
        run = lock_simulate(_with_sigma(config, sigma), cavity, duration)
        return run.rms - target_rms

    lo, hi = 0.5 * estimate, 2.0 * estimate
    f_lo, f_hi = excess(lo), excess(hi)
    if f_lo * f_hi > 0:
        raise DomainError(f"lock noise calibration failed to bracket target {target_rms!r} m")
    sigma = float(brentq(excess, lo, hi, xtol=1e-6 * estimate))
    log.info(f"[lock] calibrated noise sigma {sigma * 1e9:.4f} nm/sample for rms {target_rms * 1e9:.3f} nm")
    return sigma


def _with_sigma(config: LockConfig, sigma: float) -> LockConfig:
    return replace(config, noise_sigma=sigma)


# =============================================================================
# Length modulation
# =============================================================================

def flank_center(cavity: CavityParams, flank: str = "half_max") -> float:
    """
    Displacement x0 (m) of the modulation operating point.

    half_max: |d| = kappa/2; max_slope: the Lorentzian inflection |d| = kappa/(2 sqrt 3);
    peak: on resonance.
    """
    kappa = cavity.kappa_fwhm
    if flank == "half_max":
        d = 0.5 * kappa
    elif flank == "max_slope":
        d = 0.5 * kappa / math.sqrt(3.0)
    elif flank == "peak":
        d = 0.0
    else:
        raise ValueError(f"Unknown flank point: {flank}. Available: {', '.join(FLANK_POINTS)}")
    return detuning_to_length(d, cavity)


def modulated_emission(mod: ModulationConfig, cavity: CavityParams, emitter_rate: float = 1.0) -> Trace:
    """Emission emitter_rate x bare cavity transmission at the modulated length."""
    t = mod.sample_times()
    x = mod.displacement(t)
    y = emitter_rate * bare_cavity_transmission(length_to_detuning(x, cavity), cavity)
    return Trace(
        t, y,
        x_label="time", x_unit="s",
        y_label="emission", y_unit="arb",
        columns={"displacement": (x, "m")},
    )


def harmonic_spectrum(trace: Trace, fundamental: Optional[float] = None) -> Trace:
    """
    One-sided power spectrum of a uniformly sampled trace.

    With a fundamental the trace is first cut to whole periods. The
    level_db column is relative to the fundamental bin (or to the
    strongest non-DC bin).

    Raises:
        DomainError: non-uniform sampling
    """
    if not trace.is_uniform():
        raise DomainError("harmonic spectrum needs uniformly sampled data")
    dt = trace.step
    y = trace.y if fundamental is None else whole_periods(trace.y, dt, fundamental)
    freqs, power = one_sided_power(y, dt)
    if freqs.size < 2:
        raise DomainError("too few samples for a spectrum")
    ref = reference_power(freqs, power, fundamental)
    return Trace(
        freqs, power,
        x_label="frequency", x_unit="Hz",
        y_label="power", y_unit=f"{trace.y_unit}^2" if trace.y_unit else "",
        columns={"level_db": (levels_db(power, ref), "dB")},
    )


def harmonic_levels(spectrum: Trace, fundamental: float, orders: Iterable[int] = (1, 2, 3)) -> Dict[int, float]:
    """Level in dB of each harmonic order relative to the fundamental, from a harmonic_spectrum trace."""
    orders = list(orders)
    bins = harmonic_bins(spectrum.x, fundamental, set(orders) | {1})
    levels = levels_db(spectrum.y, float(spectrum.y[bins[1]]))
    return {order: float(levels[bins[order]]) for order in orders}
