# molcav/scenarios/parameters.py
"""
Derived-parameter summary.

Evaluates the closed-form algebra on the loaded parameter set and
reports every derived number side by side: cooperativity, linewidths
from both lifetimes, quality factor, Purcell enhancement of the 00ZPL,
in-cavity branching ratio, beta, and the two extinction-model dip depths.
No traces are written.
"""

from __future__ import annotations

from ..core.models import ScenarioContext, ScenarioOutput
from ..physics.parameter_algebra import (
    consistency_report,
    linewidth_from_lifetime,
    quality_factor,
)
from ..physics.spectra import dip_linewidth
from ..utils.log import setup_logger

log = setup_logger("scenarios.parameters")


def run_params(ctx: ScenarioContext) -> ScenarioOutput:
    system = ctx.system
    cavity, emitter = system.cavity, system.emitter
    report = consistency_report(system)
    out = ScenarioOutput()

    out.add_results(
        cooperativity=system.cooperativity,
        gamma_fwhm_hz=emitter.gamma_fwhm,
        quality_factor=quality_factor(cavity.resonance_freq, cavity.kappa_fwhm),
        alpha_cav=emitter.branching_alpha,
        beta=system.coupling.beta,
        beta_alpha=system.beta_alpha,
        linear_dip=report.linear_dip,
        eq1_dip=report.eq1_dip,
        dip_relative_gap=report.relative_gap,
        dip_fwhm_hz=dip_linewidth(system),
        effective_length_m=cavity.effective_length,
        fsr_hz=cavity.fsr,
        resonance_wavelength_m=cavity.resonance_wavelength,
    )
    if system.tau_ref is not None:
        out.add_results(gamma_dbr_hz=linewidth_from_lifetime(system.tau_ref))
    if system.tau_cav is not None:
        out.add_results(gamma_cav_hz=linewidth_from_lifetime(system.tau_cav))
    if system.zpl_enhancement is not None:
        out.add_results(zpl_enhancement=system.zpl_enhancement)

    log.info(
        f"[params] C={system.cooperativity:.4f}, alpha_cav={emitter.branching_alpha:.4f}, "
        f"beta={system.coupling.beta:.4f}, Q={out.results['quality_factor']:.0f}"
    )
    return out
