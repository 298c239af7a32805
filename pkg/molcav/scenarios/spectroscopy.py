# molcav/scenarios/spectroscopy.py
"""
Steady-state spectroscopy scenarios.

fig3a: ensemble fluorescence with the cavity locked and with the
       micromirror retracted; envelope fit recovers the cavity linewidth
fig3b: single-molecule fluorescence excitation line at weak drive
fig3c: intensity correlation with Poissonian background
fig3d: lateral mode map of a saturated molecule
fig3e: extinction dip under the coherent (linear) and single-pass (eq1) models
"""

from __future__ import annotations

import numpy as np

from ..config import DEFAULT_CONFIG as CFG
from ..core.models import ScenarioContext, ScenarioOutput
from ..fitting.fits import envelope_fit, fit_lorentzian
from ..models.trace import Trace
from ..physics.dynamics import probe_transmission_with_pump
from ..physics.dynamics_helpers.bloch import steady_inversion
from ..physics.dynamics_helpers.photon_stats import g2_background, g2_trace, signal_fraction_from_g2
from ..physics.parameter_algebra import linewidth_from_lifetime
from ..physics.spectra import (
    coupled_response,
    dip_linewidth,
    ensemble_spectrum,
    mode_map,
    mode_waist_from_map,
    probe_sweep,
    saturated_map_fwhm,
)
from ..utils.log import setup_logger
from ..utils.progress_reporter import report_progress

log = setup_logger("scenarios.spectroscopy")

# Weak-drive Rabi frequency for the excitation line, in units of gamma
WEAK_RABI_FRACTION = 0.1
# Correlation delays cover +/- this many lifetimes
G2_WINDOW_LIFETIMES = 6.0
G2_POINTS = 1201
# Lateral scan covers +/- this many waists
MODE_SCAN_WAISTS = 2.5


def _in_cavity(ctx: ScenarioContext):
    """System with the emitter linewidth set by the in-cavity lifetime, when known."""
    system = ctx.system
    return system.with_lifetime(system.tau_cav) if system.tau_cav is not None else system


# =============================================================================
# Ensemble
# =============================================================================

def run_ensemble(ctx: ScenarioContext) -> ScenarioOutput:
    params, system = ctx.params, ctx.system
    ensemble = params.ensemble(seed=ctx.seed)
    common = dict(
        emitter=system.emitter,
        grid_step=CFG.ENSEMBLE_GRID_STEP_HZ,
        half_span=CFG.ENSEMBLE_HALF_SPAN_HZ,
    )

    report_progress(1, 3, "Ensemble spectrum, cavity locked")
    locked = ensemble_spectrum(
        ensemble, system.cavity, system.drive,
        pedestal_amplitude=params.get("pedestal_amplitude", 0.0), **common,
    )
    report_progress(2, 3, "Ensemble spectrum, micromirror retracted")
    retracted = ensemble_spectrum(ensemble, system.cavity, system.drive, retracted=True, **common)

    report_progress(3, 3, "Envelope fit")
    fit = envelope_fit(locked)

    out = ScenarioOutput()
    out.add_trace("ensemble_cavity", locked)
    out.add_trace("ensemble_retracted", retracted)
    out.add_fit(fit, "envelope_")
    out.add_results(
        envelope_fwhm_hz=fit.value("fwhm"),
        envelope_fwhm_hz_stderr=fit.error("fwhm"),
        envelope_center_hz=fit.value("center"),
        envelope_converged=fit.converged,
        ensemble_size=len(ensemble),
        kappa_fwhm_hz=system.cavity.kappa_fwhm,
    )
    return out


# =============================================================================
# Single molecule
# =============================================================================

def run_single_line(ctx: ScenarioContext) -> ScenarioOutput:
    """Fluorescence ~ rho_ee versus laser detuning, normalized to its peak."""
    system = _in_cavity(ctx)
    emitter = system.emitter
    probe = probe_sweep(CFG.SPECTRUM_HALF_SPAN_HZ, CFG.SPECTRUM_POINTS)
    rabi = WEAK_RABI_FRACTION * emitter.gamma_fwhm

    rho_ee = 0.5 * (1.0 + steady_inversion(0.0, rabi, probe, emitter))
    trace = Trace(
        probe, rho_ee / np.max(rho_ee),
        x_label="probe_detuning", x_unit="Hz",
        y_label="fluorescence", y_unit="arb",
    )
    fit = fit_lorentzian(trace)

    out = ScenarioOutput()
    out.add_trace("single_line", trace)
    out.add_fit(fit, "line_")
    out.add_results(
        line_fwhm_hz=fit.value("fwhm"),
        gamma_cav_hz=emitter.gamma_fwhm,
        probe_rabi_hz=rabi,
    )
    log.info(f"[spectroscopy] single line FWHM {fit.value('fwhm') / 1e6:.2f} MHz")
    return out


def run_g2(ctx: ScenarioContext) -> ScenarioOutput:
    system = _in_cavity(ctx)
    fraction = ctx.params.get("signal_fraction", 1.0)
    span = G2_WINDOW_LIFETIMES * system.emitter.lifetime
    delays = np.linspace(-span, span, G2_POINTS)
    trace = g2_trace(delays, system.emitter.gamma_fwhm, fraction)

    g2_zero = g2_background(fraction, 0.0)
    out = ScenarioOutput()
    out.add_trace("g2", trace)
    out.add_results(
        g2_zero=g2_zero,
        signal_fraction=fraction,
        signal_fraction_from_g2=signal_fraction_from_g2(g2_zero),
    )
    return out


def run_mode_map(ctx: ScenarioContext) -> ScenarioOutput:
    system = ctx.system
    waist = system.cavity.mode_waist_fwhm
    s0 = system.drive.saturation
    positions = np.linspace(-MODE_SCAN_WAISTS * waist, MODE_SCAN_WAISTS * waist, CFG.MODE_MAP_POINTS)
    result = mode_map(positions, waist, s0)

    out = ScenarioOutput()
    out.add_trace("mode_map", result.trace)
    out.add_fit(result.fit, "map_")
    out.add_results(
        fitted_fwhm_m=result.fitted_fwhm,
        expected_map_fwhm_m=saturated_map_fwhm(waist, s0),
        waist_fwhm_m=waist,
        inferred_waist_m=mode_waist_from_map(result.fitted_fwhm, s0),
        saturation=s0,
        fit_converged=result.fit.converged,
    )
    return out


# =============================================================================
# Extinction
# =============================================================================

def run_extinction(ctx: ScenarioContext) -> ScenarioOutput:
    """
    Both extinction models on one probe sweep, tagged model=linear / model=eq1.

    The two minima are reported separately; neither is adjusted toward the other.
    """
    system = ctx.system
    probe = probe_sweep(CFG.SPECTRUM_HALF_SPAN_HZ, CFG.SPECTRUM_POINTS)
    curves = {
        "linear": coupled_response(probe, 0.0, system, saturation=0.0),
        "eq1": probe_transmission_with_pump(probe, 0.0, system).y,
    }
    traces = [
        Trace(
            probe, y,
            x_label="probe_detuning", x_unit="Hz",
            y_label="transmission", y_unit="",
            tags={"model": name},
        )
        for name, y in curves.items()
    ]

    out = ScenarioOutput()
    out.add_trace("extinction", *traces)
    out.add_results(
        min_linear=float(np.min(curves["linear"])),
        min_eq1=float(np.min(curves["eq1"])),
        min_selected=float(np.min(curves[ctx.model])),
        model=ctx.model,
        dip_fwhm_hz=dip_linewidth(system),
        gamma_cav_hz=linewidth_from_lifetime(system.tau_cav) if system.tau_cav else system.emitter.gamma_fwhm,
    )
    log.info(
        f"[spectroscopy] extinction minima: linear {out.results['min_linear']:.4f}, "
        f"eq1 {out.results['min_eq1']:.4f} (selected: {ctx.model})"
    )
    return out
