# molcav/physics/spectra.py
"""
Steady-state frequency-domain forward models.

Bare and coupled cavity transmission, Fano lineshapes versus cavity
detuning, the single-pass saturation model, inhomogeneous ensemble spectra
and lateral mode maps. Probe frequencies are given as detuning from
the 00ZPL so sub-MHz sweeps are not rounded against a 382 THz carrier.
"""

from __future__ import annotations
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import DomainError, require_non_negative, require_positive
from ..models.params import CavityParams, DriveParams, EmitterParams, SystemParams
from ..models.trace import Trace
from ..physics.parameter_algebra import saturation_parameter
from ..utils.log import setup_logger
from ..utils.progress_reporter import progress_iter
from .spectra_helpers.ensemble import (
    MoleculeEnsemble,
    default_grid,
    line_heights,
    line_widths,
    sum_lines,
    summarize,
)
from .spectra_helpers.lineshapes import coupled_transmission, eq1_transmission, lorentzian

if TYPE_CHECKING:
    from ..fitting.optimizer import FitResult

log = setup_logger("physics.spectra")

# Fraction of samples at each end used as the far-detuned baseline
BASELINE_EDGE_FRACTION = 0.10


# =============================================================================
# Cavity and coupled response
# =============================================================================

def bare_cavity_transmission(detuning, cavity: CavityParams):
    """Normalized Lorentzian (kappa/2)^2 / (d^2 + (kappa/2)^2), peak 1 at d = 0."""
    return lorentzian(detuning, 0.0, cavity.kappa_fwhm)


def coupled_response(
    probe_detuning,
    cavity_detuning: float,
    system: SystemParams,
    saturation: float = 0.0,
):
    """
    Transmission of the cavity with the molecule, relative to the empty cavity.

    Args:
        probe_detuning: Probe minus 00ZPL (Hz), scalar or array
        cavity_detuning: Cavity centre minus 00ZPL (Hz)
        system: Cavity, emitter and coupling parameters
        saturation: S >= 0; coupling is weakened as g^2 / (1 + S)

    Returns:
        T(nu) = |t_coupled / t_bare|^2, same shape as probe_detuning

    Raises:
        DomainError: S < 0 or gamma2 <= 0
    """
    require_non_negative("saturation", saturation)
    gamma2 = system.emitter.gamma2
    if not gamma2 > 0:
        raise DomainError(f"coherence decay gamma2 must be > 0 (got {gamma2!r})")
    g_eff_sq = system.coupling.g ** 2 / (1.0 + saturation)
    return coupled_transmission(
        probe_detuning, cavity_detuning, system.cavity.kappa_fwhm, gamma2, g_eff_sq
    )


def double_resonance_dip(cooperativity: float) -> float:
    """Depth 1 - 1/(1+C)^2 of the coupled response at d_c = d_m = 0 (gamma* = 0, S = 0)."""
    require_non_negative("cooperativity", cooperativity)
    return 1.0 - 1.0 / (1.0 + cooperativity) ** 2


def dip_linewidth(system: SystemParams) -> float:
    """FWHM gamma (1 + C) of the extinction dip on double resonance."""
    return system.emitter.gamma_fwhm * (1.0 + system.cooperativity)


def probe_sweep(half_span: float, points: int) -> np.ndarray:
    """Symmetric probe detuning grid; an odd point count puts a sample on the ZPL."""
    require_positive("half_span", half_span)
    if points < 2:
        raise DomainError(f"sweep needs >= 2 points (got {points})")
    return np.linspace(-half_span, half_span, points)


def response_trace(probe: np.ndarray, cavity_detuning: float, system: SystemParams,
                   saturation: float = 0.0) -> Trace:
    """coupled_response sampled on a probe grid, as a Trace."""
    y = coupled_response(probe, cavity_detuning, system, saturation)
    return Trace(
        probe, y,
        x_label="probe_detuning", x_unit="Hz",
        y_label="transmission", y_unit="",
        tags={"cavity_detuning_hz": repr(float(cavity_detuning))},
    )


# =============================================================================
# Fano series
# =============================================================================

def fano_series(
    probe: Sequence[float],
    cavity_detunings: Iterable[float],
    system: SystemParams,
    saturation: float = 0.0,
) -> List[Trace]:
    """
    One coupled-response trace per cavity detuning.

    Raises:
        DomainError: a detuning outside +/- 3 kappa
    """
    kappa = system.cavity.kappa_fwhm
    detunings = list(cavity_detunings)
    for d in detunings:
        if abs(d) > 3.0 * kappa:
            raise DomainError(
                f"cavity detuning {d!r} Hz outside +/- 3 kappa ({3.0 * kappa!r} Hz)"
            )

    probe = np.asarray(probe, dtype=float)
    traces = [
        response_trace(probe, d, system, saturation)
        for d in progress_iter(detunings, desc="fano", unit="panel")
    ]
    log.debug(f"[spectra] fano series: {len(traces)} panels, {probe.size} points each")
    return traces


def far_baseline(trace: Trace) -> float:
    """Mean of the outer 10% of samples on each side."""
    n = max(1, int(round(BASELINE_EDGE_FRACTION * len(trace))))
    return float(np.mean(np.concatenate([trace.y[:n], trace.y[-n:]])))


def excursions(trace: Trace) -> Tuple[float, float]:
    """
    Largest excursions above and below the far-detuned baseline.

    A dispersive (Fano) shape has both entries clearly positive; an
    absorptive dip has only the second.
    """
    base = far_baseline(trace)
    return float(np.max(trace.y) - base), float(base - np.min(trace.y))


def excursion_balance(trace: Trace) -> float:
    """Signed difference (max above baseline) - (max below baseline)."""
    above, below = excursions(trace)
    return above - below


def asymmetry_metric(trace: Trace, rtol: float = 1e-9) -> float:
    """
    Largest |T(d) - T(-d)| over a sweep symmetric about the 00ZPL.

    Zero for the absorptive shape at zero cavity detuning.

    Raises:
        DomainError: the sweep is not symmetric about zero
    """
    span = trace.x[-1] - trace.x[0]
    if np.max(np.abs(trace.x + trace.x[::-1])) > rtol * span:
        raise DomainError("asymmetry metric needs a probe sweep symmetric about zero detuning")
    return float(np.max(np.abs(trace.y - trace.y[::-1])))


# =============================================================================
# Single-pass saturation
# =============================================================================

def saturation_transmission(saturation, beta: float, alpha_cav: float):
    """
    T = [1 - beta alpha / (1 + S)]^2.

    Raises:
        DomainError: S < 0 or beta alpha outside [0, 1]
    """
    ba = beta * alpha_cav
    if not 0.0 <= ba <= 1.0:
        raise DomainError(f"beta * alpha_cav must lie in [0, 1] (got {ba!r})")
    s = np.asarray(saturation, dtype=float)
    if np.any(s < 0):
        raise DomainError("saturation parameter must be >= 0")
    result = eq1_transmission(s, ba)
    return float(result) if result.ndim == 0 else result


def saturation_curve(flux_sweep: Sequence[float], n_crit: float, beta: float, alpha_cav: float) -> Trace:
    """Single-pass saturation transmission versus photon flux (photons per lifetime)."""
    flux = np.asarray(flux_sweep, dtype=float)
    if np.any(flux < 0):
        raise DomainError("photon fluxes must be >= 0")
    s = np.array([saturation_parameter(f, n_crit) for f in flux])
    return Trace(
        flux, saturation_transmission(s, beta, alpha_cav),
        x_label="photon_flux", x_unit="photons/lifetime",
        y_label="transmission", y_unit="",
    )


# =============================================================================
# Ensemble spectrum
# =============================================================================

def ensemble_spectrum(
    ensemble: MoleculeEnsemble,
    cavity: CavityParams,
    excitation: DriveParams,
    *,
    emitter: EmitterParams,
    pedestal_amplitude: float = 0.0,
    retracted: bool = False,
    grid: Optional[np.ndarray] = None,
    grid_step: float = 20e6,
    half_span: float = 750e9,
) -> Trace:
    """
    Stokes-fluorescence proxy of an inhomogeneous ensemble in the cavity.

    Args:
        ensemble: Sampled molecules
        cavity: Cavity filtering the excitation
        excitation: Drive; its saturation parameter sets line heights and widths
        emitter: Default linewidth for molecules without an override
        pedestal_amplitude: Background fluorescence following the cavity Lorentzian
        retracted: Micromirror retracted, flat weighting and no pedestal
        grid: Detuning from the cavity resonance (Hz); default +/- half_span

    Raises:
        DomainError: empty ensemble
    """
    if len(ensemble) == 0:
        raise DomainError("ensemble contains no molecules")
    require_non_negative("pedestal_amplitude", pedestal_amplitude)

    x = default_grid(half_span, grid_step) if grid is None else np.asarray(grid, dtype=float)
    s = excitation.saturation
    detunings = ensemble.detunings(cavity)
    heights = line_heights(ensemble, cavity, excitation, retracted=retracted)
    widths = line_widths(ensemble, emitter, s)

    y = sum_lines(x, detunings, heights, widths)
    if not retracted and pedestal_amplitude > 0:
        y = y + pedestal_amplitude * bare_cavity_transmission(x, cavity)

    log.info(f"[spectra] ensemble spectrum: {summarize(heights, detunings)}, retracted={retracted}")
    return Trace(
        x, y,
        x_label="detuning", x_unit="Hz",
        y_label="fluorescence", y_unit="arb",
        tags={"line_fwhm_hz": repr(float(np.median(widths)))},
    )


# =============================================================================
# Mode map
# =============================================================================

@dataclass(frozen=True)
class ModeMap:
    """Lateral scan of the saturated response with its Gaussian fit."""
    trace: Trace
    fit: "FitResult"

    @property
    def fitted_fwhm(self) -> float:
        return self.fit.value("fwhm")


def saturated_profile(positions, waist_fwhm: float, s0: float):
    """y = S/(1+S) with S(x) = S0 exp(-4 ln2 x^2 / waist^2)."""
    x = np.asarray(positions, dtype=float)
    s = s0 * np.exp(-4.0 * math.log(2.0) * x * x / (waist_fwhm * waist_fwhm))
    return s / (1.0 + s)


def saturated_map_fwhm(waist_fwhm: float, s0: float) -> float:
    """Exact half-maximum width of the saturated profile: w sqrt(ln(2+S0)/ln 2)."""
    require_positive("waist_fwhm", waist_fwhm)
    require_non_negative("S0", s0)
    return waist_fwhm * math.sqrt(math.log(2.0 + s0) / math.log(2.0))


def mode_waist_from_map(measured_fwhm: float, s0: float) -> float:
    """Mode waist behind a saturated map of the given width (inverse of saturated_map_fwhm)."""
    require_positive("measured_fwhm", measured_fwhm)
    require_non_negative("S0", s0)
    return measured_fwhm * math.sqrt(math.log(2.0) / math.log(2.0 + s0))


def mode_map(scan_positions: Sequence[float], waist_fwhm: float, s0: float) -> ModeMap:
    """
    Lateral mode map and its Gaussian-fit FWHM.

    Raises:
        DomainError: waist <= 0 or S0 < 0 (S0 = 0 gives a flat zero map)
    """
    require_positive("waist_fwhm", waist_fwhm)
    require_non_negative("S0", s0)
    from ..fitting.fits import fit_family

    x = np.asarray(scan_positions, dtype=float)
    trace = Trace(
        x, saturated_profile(x, waist_fwhm, s0),
        x_label="position", x_unit="m",
        y_label="response", y_unit="",
    )
    fit = fit_family("gaussian", trace)
    log.debug(
        f"[spectra] mode map: waist={waist_fwhm:.3e} m, S0={s0}, fitted FWHM={fit.value('fwhm'):.3e} m"
    )
    return ModeMap(trace, fit)
