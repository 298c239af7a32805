# molcav/fitting/fits.py
"""
Fit front ends: generic family fits, IRF-aware decay fits and the
ensemble envelope fit.
"""

from __future__ import annotations
import math
from dataclasses import replace
from typing import Mapping, Optional

import numpy as np
from scipy.ndimage import median_filter
from scipy.optimize import minimize_scalar

from ..config import DEFAULT_CONFIG as CFG
from ..errors import DomainError, require_positive
from ..models.trace import Trace
from ..physics.dynamics_helpers.irf import InstrumentResponse
from ..utils.log import setup_logger
from .model_families import FitModel, get_family
from .optimizer import FitResult, levenberg_marquardt

log = setup_logger("fitting.fits")

# Envelope filter window in single-molecule linewidths
ENVELOPE_WINDOW_LINEWIDTHS = 5.0
MIN_ENVELOPE_WINDOW = 5


def fit(model: FitModel, data: Trace) -> FitResult:
    """
    Least-squares fit of a prepared model to a trace.

    Per-point weights come from the trace's sigma column when present.
    """
    family = get_family(model.name)
    consts = dict(model.constants)

    def fn(x, p):
        return family.function(x, p, consts)

    jac = None
    if family.jacobian is not None:
        def jac(x, p):
            return family.jacobian(x, p, consts)

    return levenberg_marquardt(
        fn, data.x, data.y, model.initial, model.lower, model.upper,
        jacobian=jac, sigma=data.sigma, name=model.name, parameter_names=model.names,
    )


def evaluate(model_name: str, x, values, constants: Optional[Mapping[str, float]] = None) -> np.ndarray:
    """Family function at the given parameters."""
    family = get_family(model_name)
    return family.function(np.asarray(x, dtype=float), np.asarray(values, dtype=float), dict(constants or {}))


def fit_family(name: str, data: Trace, constants: Optional[Mapping[str, float]] = None) -> FitResult:
    """
    Build the family's deterministic start and fit.

    coupled_response is started at cavity detunings of +kappa/2 and
    -kappa/2 and the lower-cost result is kept.
    """
    family = get_family(name)
    consts = dict(constants or {})
    if name != "coupled_response":
        return fit(family.build(data, consts), data)

    kappa = consts.get("kappa")
    if kappa is None:
        raise DomainError("coupled_response fit needs constants ['kappa']")
    best: Optional[FitResult] = None
    for sign in (1.0, -1.0):
        model = family.build(data, {**consts, "cavity_detuning_start": sign * 0.5 * kappa})
        result = fit(model, data)
        if best is None or _better(result, best):
            best = result
    return best


def _better(a: FitResult, b: FitResult) -> bool:
    if a.converged != b.converged:
        return a.converged
    return a.residual_sum_squares < b.residual_sum_squares


def fit_lorentzian(data: Trace) -> FitResult:
    return fit_family("lorentzian", data)


def fit_decay_with_irf(
    data: Trace,
    irf: Optional[InstrumentResponse],
    t0: Optional[float] = None,
) -> FitResult:
    """
    Fit amplitude, decay time and offset of an exponential seen through a Gaussian IRF.

    irf=None fits a plain exponential starting at t0 (default: the trace
    maximum). With an IRF and no t0 the onset starts at the half-rise point
    and is refined to the residual minimum within 2 IRF sigmas.

    Raises:
        DomainError: the trace covers fewer than 3 decay times after t0
    """
    consts = {} if t0 is None else {"t0": float(t0)}
    if irf is not None:
        consts["sigma"] = irf.sigma
    name = "exponential" if irf is None else "exp_irf"
    model = get_family(name).build(data, consts)

    tau0 = float(model.initial[model.names.index("tau")])
    covered = data.x[-1] - model.constants["t0"]
    if covered < 3.0 * tau0:
        raise DomainError(
            f"decay trace covers {covered:.3e} s after onset, less than 3 decay times ({3.0 * tau0:.3e} s)"
        )

    if irf is not None and t0 is None:
        model = _refine_onset(model, data, irf.sigma)

    result = fit(model, data)
    log.debug(f"[fits] decay fit: tau = {result.value('tau'):.4e} s ({name})")
    return result


def _with_onset(model: FitModel, t0: float) -> FitModel:
    return replace(model, constants={**model.constants, "t0": float(t0)})


def _refine_onset(model: FitModel, data: Trace, sigma: float) -> FitModel:
    start = float(model.constants["t0"])

    def rss(t0: float) -> float:
        return fit(_with_onset(model, t0), data).residual_sum_squares

    found = minimize_scalar(
        rss, bounds=(start - 2.0 * sigma, start + 2.0 * sigma),
        method="bounded", options={"xatol": 1e-4 * sigma},
    )
    log.debug(f"[fits] decay onset {start:.4e} s -> {found.x:.4e} s")
    return _with_onset(model, found.x)


# =============================================================================
# Envelope
# =============================================================================

def envelope_window(trace: Trace, linewidth: Optional[float] = None) -> int:
    """Odd median-filter window covering >= 5 single-molecule linewidths."""
    if linewidth is None:
        tag = trace.tags.get("line_fwhm_hz")
        if tag is None:
            raise DomainError("envelope fit needs a linewidth (argument or line_fwhm_hz tag)")
        linewidth = float(tag)
    require_positive("linewidth", linewidth)
    window = max(int(math.ceil(ENVELOPE_WINDOW_LINEWIDTHS * linewidth / trace.step)), MIN_ENVELOPE_WINDOW)
    return window if window % 2 == 1 else window + 1


def envelope_fit(
    ensemble_trace: Trace,
    linewidth: Optional[float] = None,
    window: Optional[int] = None,
) -> FitResult:
    """
    Lorentzian fit to the broad pedestal under narrow molecular lines.

    The lines are removed with a median filter first. A pedestal below
    ENVELOPE_MIN_PEDESTAL of the trace maximum, or an amplitude below three
    standard errors, marks the result as not converged.
    """
    size = envelope_window(ensemble_trace, linewidth) if window is None else int(window)
    if size < 1:
        raise DomainError(f"median window must be >= 1 (got {size})")
    filtered = ensemble_trace.with_y(
        median_filter(ensemble_trace.y, size=size, mode="nearest"), y_label="envelope"
    )

    result = fit_lorentzian(filtered)
    peak = float(np.max(np.abs(ensemble_trace.y)))
    pedestal = float(np.ptp(filtered.y))
    amp, amp_err = abs(result.value("amplitude")), result.error("amplitude")

    if peak == 0.0 or pedestal < CFG.ENVELOPE_MIN_PEDESTAL * peak:
        result = replace(result, converged=False, message="pedestal indistinguishable from zero")
    elif amp < 3.0 * amp_err:
        result = replace(result, converged=False, message="pedestal amplitude below 3 standard errors")

    log.info(
        f"[fits] envelope: window={size} samples, FWHM={result.value('fwhm') / 1e9:.2f} GHz, "
        f"converged={result.converged}"
    )
    return result
