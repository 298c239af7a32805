# molcav/physics/dynamics_helpers/irf.py
"""
Gaussian instrument response and convolution.

Detector traces are modelled as piecewise-linear signals with possible
jumps (the pulse arrival). Their convolution with a Gaussian has a closed
form in terms of the normal CDF, so the smoothed trace is exact up to the
piecewise-linear sampling of the input.
"""

from __future__ import annotations
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import erfc, erfcx, ndtr

from ...config import DEFAULT_CONFIG as CFG
from ...errors import DomainError, require_positive
from ...utils.log import setup_logger

log = setup_logger("physics.dynamics_helpers.irf")

FWHM_PER_SIGMA = 2.0 * math.sqrt(2.0 * math.log(2.0))
INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
# Corrections of a jump or kink are below 1e-30 beyond this many sigma
_SUPPORT_SIGMAS = 12.0
_CHUNK = 512


@dataclass(frozen=True)
class InstrumentResponse:
    """Gaussian detector response of a given FWHM (s)."""
    fwhm: float
    shape: str = "gaussian"

    def __post_init__(self):
        require_positive("irf fwhm", self.fwhm)
        if self.shape != "gaussian":
            raise DomainError(f"unsupported instrument response shape {self.shape!r}")

    @property
    def sigma(self) -> float:
        return self.fwhm / FWHM_PER_SIGMA

    def kernel(self, dt: float) -> np.ndarray:
        """
        Sampled kernel on +/- IRF_KERNEL_SIGMAS sigma, normalized to unit sum.

        Raises:
            DomainError: dt <= 0
        """
        require_positive("dt", dt)
        half = max(1, int(math.ceil(CFG.IRF_KERNEL_SIGMAS * self.sigma / dt)))
        t = dt * np.arange(-half, half + 1)
        k = np.exp(-0.5 * (t / self.sigma) ** 2)
        return k / k.sum()

    def profile(self, times, center: float = 0.0) -> np.ndarray:
        """Unit-peak Gaussian profile for display next to the data."""
        u = (np.asarray(times, dtype=float) - center) / self.sigma
        return np.exp(-0.5 * u * u)


# =============================================================================
# Piecewise-linear signals
# =============================================================================

def evaluate_piecewise_linear(knots: np.ndarray, values: np.ndarray, t) -> np.ndarray:
    """
    Evaluate a piecewise-linear signal with constant extension.

    A repeated knot encodes a jump; at the jump time the right-hand value
    is returned.
    """
    t = np.asarray(t, dtype=float)
    i = np.searchsorted(knots, t, side="right") - 1
    out = np.empty_like(t)

    left = i < 0
    right = i >= knots.size - 1
    inner = ~(left | right)
    out[left] = values[0]
    out[right] = values[-1]

    j = i[inner]
    frac = (t[inner] - knots[j]) / (knots[j + 1] - knots[j])
    out[inner] = values[j] + frac * (values[j + 1] - values[j])
    return out


def _jump_kernel(x: np.ndarray, sigma: float) -> np.ndarray:
    """Gaussian-smoothed unit step minus the step itself."""
    u = x / sigma
    return np.where(x >= 0, -ndtr(-u), ndtr(u))


def _ramp_kernel(x: np.ndarray, sigma: float) -> np.ndarray:
    """Gaussian-smoothed unit ramp max(x, 0) minus the ramp itself."""
    ax = np.abs(x)
    u = ax / sigma
    return sigma * INV_SQRT_2PI * np.exp(-0.5 * u * u) - ax * ndtr(-u)


def convolve_piecewise_linear(
    knots,
    values,
    irf: Optional[InstrumentResponse],
    times,
) -> np.ndarray:
    """
    Exact convolution of a piecewise-linear signal with a Gaussian IRF.

    The signal is written as its own values plus, at every knot, a jump
    and a slope change; each of those has a closed-form smoothing
    correction that vanishes a few sigma away from the knot.

    Args:
        knots: Non-decreasing knot times; a repeated time marks a jump
        values: Signal value at every knot
        irf: Gaussian response, or None for an ideal detector
        times: Output times

    Raises:
        DomainError: mismatched lengths or decreasing knots
    """
    knots = np.asarray(knots, dtype=float)
    values = np.asarray(values, dtype=float)
    t = np.asarray(times, dtype=float)
    if knots.size != values.size or knots.size < 2:
        raise DomainError("knots and values must have the same length >= 2")
    seg = np.diff(knots)
    if np.any(seg < 0):
        raise DomainError("knots must be non-decreasing")

    base = evaluate_piecewise_linear(knots, values, t)
    if irf is None:
        return base

    sigma = irf.sigma
    dv = np.diff(values)
    is_jump = seg == 0
    slopes = np.where(is_jump, 0.0, dv / np.where(is_jump, 1.0, seg))
    slope_change = np.diff(np.concatenate([[0.0], slopes, [0.0]]))
    jump_at = knots[:-1][is_jump]
    jump_size = dv[is_jump]

    reach = _SUPPORT_SIGMAS * sigma
    out = base.copy()
    for start in range(0, t.size, _CHUNK):
        tc = t[start:start + _CHUNK]
        lo = np.searchsorted(knots, tc[0] - reach, side="left")
        hi = np.searchsorted(knots, tc[-1] + reach, side="right")
        if hi > lo:
            x = tc[:, None] - knots[None, lo:hi]
            out[start:start + _CHUNK] += _ramp_kernel(x, sigma) @ slope_change[lo:hi]
        if jump_at.size:
            jl = np.searchsorted(jump_at, tc[0] - reach, side="left")
            jh = np.searchsorted(jump_at, tc[-1] + reach, side="right")
            if jh > jl:
                x = tc[:, None] - jump_at[None, jl:jh]
                out[start:start + _CHUNK] += _jump_kernel(x, sigma) @ jump_size[jl:jh]

    log.debug(f"[irf] convolved {knots.size} knots onto {t.size} samples, sigma={sigma:.3e} s")
    return out


def convolve_sampled(values, dt: float, irf: InstrumentResponse) -> np.ndarray:
    """Brute-force discrete convolution with the sampled kernel, edges held constant."""
    y = np.asarray(values, dtype=float)
    kernel = irf.kernel(dt)
    half = kernel.size // 2
    padded = np.concatenate([np.full(half, y[0]), y, np.full(half, y[-1])])
    return np.convolve(padded, kernel, mode="valid")


# =============================================================================
# Exponentially modified Gaussian
# =============================================================================

def emg(t, amplitude: float, tau: float, sigma: float, t0: float = 0.0):
    """
    Exponential decay A exp(-(t - t0)/tau) for t >= t0 convolved with a unit-area Gaussian.

    Uses the scaled complementary error function where the plain form
    would overflow.
    """
    require_positive("tau", tau)
    require_positive("sigma", sigma)
    x = np.asarray(t, dtype=float) - t0
    z = (sigma / tau - x / sigma) / math.sqrt(2.0)
    out = np.empty_like(x)
    pos = z >= 0
    out[pos] = np.exp(-0.5 * (x[pos] / sigma) ** 2) * erfcx(z[pos])
    neg = ~pos
    out[neg] = np.exp(0.5 * (sigma / tau) ** 2 - x[neg] / tau) * erfc(z[neg])
    return 0.5 * amplitude * out
