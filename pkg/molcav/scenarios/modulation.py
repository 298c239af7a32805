# molcav/scenarios/modulation.py
"""
Cavity-length modulation of the molecular emission.

fig6a: emission trace at the preset modulation frequency, operating on
       the chosen flank of the cavity resonance
fig6b: harmonic content at the slow preset modulation and at the fast
       piezo modulation
"""

from __future__ import annotations
from typing import Tuple

from ..core.models import ScenarioContext, ScenarioOutput
from ..physics.cavity_control import harmonic_levels, harmonic_spectrum, modulated_emission
from ..utils.log import setup_logger
from ..utils.progress_reporter import report_progress

log = setup_logger("scenarios.modulation")

# Fast modulation (frequency, sample rate) in Hz
FAST_MODULATION: Tuple[float, float] = (114e3, 2.28e6)
HARMONIC_ORDERS = (1, 2, 3)


def _frequency_label(frequency: float) -> str:
    """10 -> "10hz", 114000 -> "114khz"."""
    if frequency >= 1e3 and frequency % 1e3 == 0:
        return f"{int(frequency // 1e3)}khz"
    return f"{frequency:g}hz"


def run_modulation(ctx: ScenarioContext) -> ScenarioOutput:
    params = ctx.params
    mod = params.modulation_config()
    trace = modulated_emission(mod, ctx.system.cavity)

    out = ScenarioOutput()
    out.add_trace("modulated_emission", trace)
    out.add_results(
        modulation_center_m=mod.center,
        modulation_flank=params.get("modulation_flank", "half_max"),
        amplitude_m=mod.amplitude,
        frequency_hz=mod.frequency,
        period_s=mod.period,
        emission_min=float(trace.y.min()),
        emission_max=float(trace.y.max()),
    )
    log.info(
        f"[modulation] {mod.frequency:g} Hz, center {mod.center * 1e9:+.3f} nm, "
        f"emission {trace.y.min():.3f}..{trace.y.max():.3f}"
    )
    return out


def run_harmonics(ctx: ScenarioContext) -> ScenarioOutput:
    """Harmonic levels relative to the fundamental for the slow and the fast modulation."""
    params, cavity = ctx.params, ctx.system.cavity
    runs = {
        "": params.modulation_config(),
        "_114khz": params.modulation_config(frequency=FAST_MODULATION[0], sample_rate=FAST_MODULATION[1]),
    }

    out = ScenarioOutput()
    for i, (suffix, mod) in enumerate(runs.items(), start=1):
        report_progress(i, len(runs), f"Harmonics at {mod.frequency:g} Hz")
        emission = modulated_emission(mod, cavity)
        spectrum = harmonic_spectrum(emission, mod.frequency)
        levels = harmonic_levels(spectrum, mod.frequency, HARMONIC_ORDERS)

        out.add_trace(f"harmonics_{_frequency_label(mod.frequency)}", spectrum)
        out.add_results({f"level_{order}f_db{suffix}": level for order, level in levels.items() if order > 1})
        out.add_results({f"fundamental_hz{suffix}": mod.frequency})
        log.info(
            f"[modulation] {mod.frequency:g} Hz: 2f {levels[2]:.1f} dB, 3f {levels[3]:.1f} dB"
        )
    return out
