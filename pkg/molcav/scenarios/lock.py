# molcav/scenarios/lock.py
"""
Cavity-length lock with the Hansch-Couillaud error signal.

Runs the PI loop closed and open on the same disturbance. When the
parameter file names lock_target_rms the disturbance strength is first
calibrated so the closed loop lands on that residual.
"""

from __future__ import annotations

from ..core.models import ScenarioContext, ScenarioOutput
from ..physics.cavity_control import calibrate_lock_noise, hc_slope, lock_simulate, lock_stability_margin
from ..utils.log import setup_logger
from ..utils.progress_reporter import report_progress

log = setup_logger("scenarios.lock")


def run_lock(ctx: ScenarioContext) -> ScenarioOutput:
    params, cavity = ctx.params, ctx.system.cavity
    duration = params.lock_duration()
    config = params.lock_config(seed=ctx.seed)

    target = params.get("lock_target_rms")
    if target is not None:
        report_progress(1, 3, "Calibrating disturbance")
        sigma = calibrate_lock_noise(target, config, cavity, duration)
        config = params.lock_config(seed=ctx.seed, noise_sigma=sigma)

    report_progress(2, 3, "Closed loop")
    closed = lock_simulate(config, cavity, duration)
    report_progress(3, 3, "Open loop")
    opened = lock_simulate(params.lock_config(seed=ctx.seed, noise_sigma=config.noise_sigma, closed_loop=False),
                           cavity, duration)

    out = ScenarioOutput()
    out.add_trace("lock_residual", closed.residual, opened.residual)
    out.add_results(
        rms_closed_nm=closed.rms * 1e9,
        rms_open_nm=opened.rms * 1e9,
        suppression=opened.rms / closed.rms if closed.rms > 0 else float("inf"),
        noise_sigma_nm=config.noise_sigma * 1e9,
        stability_margin=lock_stability_margin(config.kp, config.ki),
        kp=config.kp,
        ki=config.ki,
        hc_slope=hc_slope(cavity),
        duration_s=duration,
    )
    if target is not None:
        out.add_results(target_rms_nm=target * 1e9)
    log.info(f"[lock] rms closed {closed.rms * 1e9:.4f} nm, open {opened.rms * 1e9:.4f} nm")
    return out
