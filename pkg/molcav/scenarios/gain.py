# molcav/scenarios/gain.py
"""
Incoherent pumping: CW probe transmission, amplification and pulsed dynamics.

fig5a-c: probe sweeps at pump rates 0, gamma and 3 gamma
fig5d:   resonant gain versus pump power, synthetic data fitted for the
         pump scale and the pure dephasing that caps the gain
fig5e:   pulsed emission with the probe off, on resonance and off resonance
fig5f:   stimulated-emission difference and its zero crossing near tau ln 2
"""

from __future__ import annotations
import math
from typing import Dict

import numpy as np

from ..config import DEFAULT_CONFIG as CFG
from ..core.models import ScenarioContext, ScenarioOutput
from ..fitting.fits import evaluate, fit_decay_with_irf, fit_family
from ..models.trace import Trace
from ..physics.dynamics import (
    PulseConfig,
    amplification_curve,
    default_time_grid,
    dephasing_for_peak_gain,
    first_zero_crossing,
    max_gain_percent,
    peak_gain_pump_rate,
    probe_transmission_with_pump,
    pulsed_response,
    stimulated_difference,
)
from ..physics.spectra import probe_sweep
from ..utils.log import setup_logger
from ..utils.progress_reporter import report_progress
from .synthetic import with_noise

log = setup_logger("scenarios.gain")

# Pump rate of each probe panel, in units of gamma
PANEL_PUMP_RATES: Dict[str, float] = {
    "a": 0.0,
    "b": 1.0,
    "c": 3.0,
}

# Peak CW gain the fitted amplification data is generated with (percent)
TARGET_PEAK_GAIN_PERCENT = 2.0
# Pump power sweep reaches this multiple of the peak-gain power
PUMP_POWER_SPAN = 4.0


def _in_cavity(ctx: ScenarioContext):
    system = ctx.system
    return system.with_lifetime(system.tau_cav) if system.tau_cav is not None else system


def _pulse(ctx: ScenarioContext) -> PulseConfig:
    return PulseConfig(initial_excited_population=ctx.params.get("initial_excited_population", 1.0))


# =============================================================================
# CW pumping
# =============================================================================

def run_probe_panel(ctx: ScenarioContext, panel: str) -> ScenarioOutput:
    """
    Probe sweep at the panel's pump rate.

    Raises:
        ValueError: unknown panel letter
    """
    if panel not in PANEL_PUMP_RATES:
        raise ValueError(f"Unknown pump panel: {panel}. Available: {list(PANEL_PUMP_RATES)}")
    system = ctx.system
    pump_rate = PANEL_PUMP_RATES[panel] * system.emitter.gamma_fwhm
    probe = probe_sweep(CFG.SPECTRUM_HALF_SPAN_HZ, CFG.SPECTRUM_POINTS)
    trace = probe_transmission_with_pump(probe, pump_rate, system)
    resonant = float(probe_transmission_with_pump([0.0], pump_rate, system).y[0])

    out = ScenarioOutput()
    out.add_trace(f"probe_pump_{panel}", trace)
    out.add_results(
        pump_rate_hz=pump_rate,
        pump_rate_gamma=PANEL_PUMP_RATES[panel],
        resonant_transmission=resonant,
        min_transmission=float(np.min(trace.y)),
        max_transmission=float(np.max(trace.y)),
    )
    log.info(f"[gain] panel {panel}: k_p = {pump_rate / 1e6:.1f} MHz, T(0) = {resonant:.4f}")
    return out


def run_probe_a(ctx: ScenarioContext) -> ScenarioOutput:
    return run_probe_panel(ctx, "a")


def run_probe_b(ctx: ScenarioContext) -> ScenarioOutput:
    return run_probe_panel(ctx, "b")


def run_probe_c(ctx: ScenarioContext) -> ScenarioOutput:
    return run_probe_panel(ctx, "c")


def run_amplification(ctx: ScenarioContext) -> ScenarioOutput:
    """
    Ideal gain curve plus a dephased, noisy measurement versus pump power.

    Pump power maps linearly to k_p with the scale that puts the gain
    maximum at pump_power_at_peak.
    """
    system = ctx.system
    gamma = system.emitter.gamma_fwhm
    k_max = PUMP_POWER_SPAN * peak_gain_pump_rate(gamma)

    report_progress(1, 3, "Ideal amplification curve")
    ideal = amplification_curve(np.linspace(0.0, k_max, CFG.AMPLIFICATION_POINTS), system)

    report_progress(2, 3, "Synthetic amplification data")
    gamma_star = dephasing_for_peak_gain(TARGET_PEAK_GAIN_PERCENT, system)
    dephased = system.with_pure_dephasing(gamma_star)
    k_peak = peak_gain_pump_rate(gamma, gamma_star)
    p_peak = ctx.params.require("pump_power_at_peak")
    scale = k_peak / p_peak

    power = np.linspace(0.0, PUMP_POWER_SPAN * p_peak, CFG.AMPLIFICATION_POINTS)
    curve = amplification_curve(scale * power, dephased)
    model = Trace(
        power, curve.y,
        x_label="pump_power", x_unit="W",
        y_label="gain", y_unit="%",
    )
    data = with_noise(model, ctx.params.get("noise_fraction", 0.0), ctx.rng(), scale=TARGET_PEAK_GAIN_PERCENT)

    report_progress(3, 3, "Amplification fit")
    constants = {"gamma": gamma, "beta_alpha": system.beta_alpha}
    fit = fit_family("amplification", data, constants)
    fitted = evaluate("amplification", power, fit.values, constants)

    out = ScenarioOutput()
    out.add_trace("amplification_ideal", ideal)
    out.add_trace("amplification_fitted", data.with_column("fit", fitted, "%"))
    out.add_fit(fit)
    out.add_results(
        max_gain_percent_ideal=float(np.max(ideal.y)),
        max_gain_percent_ideal_closed_form=max_gain_percent(system),
        max_gain_percent_dephased=max_gain_percent(dephased),
        pure_dephasing_hz=gamma_star,
        pump_scale_hz=scale,
        pump_rate_at_peak_hz=k_peak,
    )
    log.info(f"[gain] amplification fit: {fit.summary_line()}")
    return out


# =============================================================================
# Pulsed
# =============================================================================

def run_pulsed(ctx: ScenarioContext) -> ScenarioOutput:
    """Pulsed emission traces and a lifetime fit to the probe-off decay."""
    system = _in_cavity(ctx)
    pulse = _pulse(ctx)
    irf = ctx.params.irf()
    grid = default_time_grid(system.emitter.lifetime, pulse.arrival_time)

    variants = {
        "pulsed_probe_off": dict(probe_on=False),
        "pulsed_probe_on": dict(probe_on=True, probe_detuning=0.0),
        "pulsed_probe_offres": dict(probe_on=True, probe_detuning=CFG.PROBE_OFF_RESONANCE_HZ),
    }
    out = ScenarioOutput()
    traces = {}
    for i, (name, kwargs) in enumerate(variants.items(), start=1):
        report_progress(i, len(variants) + 1, name)
        probe_on = kwargs.pop("probe_on")
        traces[name] = pulsed_response(pulse, probe_on, system, irf, grid, **kwargs)
        out.add_trace(name, traces[name])

    if irf is not None:
        out.add_trace("irf", Trace(
            grid, irf.profile(grid, pulse.arrival_time),
            x_label="time", x_unit="s",
            y_label="irf", y_unit="1/s",
        ))

    report_progress(len(variants) + 1, len(variants) + 1, "Lifetime fit")
    fit = fit_decay_with_irf(traces["pulsed_probe_off"], irf, t0=pulse.arrival_time)
    out.add_fit(fit, "decay_")
    out.add_results(
        tau_fit_s=fit.value("tau"),
        tau_true_s=system.emitter.lifetime,
        irf_fwhm_s=irf.fwhm if irf is not None else 0.0,
    )
    log.info(f"[gain] fitted lifetime {fit.value('tau') * 1e9:.3f} ns (true {system.emitter.lifetime * 1e9:.3f} ns)")
    return out


def run_stimulated(ctx: ScenarioContext) -> ScenarioOutput:
    """Difference trace; the IRF shifts the crossing only slightly from tau ln 2."""
    system = _in_cavity(ctx)
    pulse = _pulse(ctx)
    irf = ctx.params.irf()
    grid = default_time_grid(system.emitter.lifetime, pulse.arrival_time)

    measured = stimulated_difference(pulse, system, irf, grid)
    ideal = stimulated_difference(pulse, system, None, grid)

    out = ScenarioOutput()
    out.add_trace("stimulated_difference", measured.with_column("ideal", ideal.y, measured.y_unit))
    out.add_results(
        zero_crossing_s=first_zero_crossing(measured, start=pulse.arrival_time),
        zero_crossing_ideal_s=first_zero_crossing(ideal, start=pulse.arrival_time),
        tau_ln2_s=system.emitter.lifetime * math.log(2.0),
        peak_difference=float(np.max(measured.y)),
    )
    log.info(
        f"[gain] zero crossing {out.results['zero_crossing_s'] * 1e9:.3f} ns, "
        f"tau ln2 = {out.results['tau_ln2_s'] * 1e9:.3f} ns"
    )
    return out
