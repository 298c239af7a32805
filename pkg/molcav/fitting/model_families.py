# molcav/fitting/model_families.py
"""
Registry of fit model families.

A family bundles the model function, an optional analytic Jacobian and
a deterministic initial-guess heuristic. Guesses read the trace only:
baseline from the outer 10% of samples, peak from the largest deviation,
width from the half-maximum crossings around it.
"""

from __future__ import annotations
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from ..errors import DomainError
from ..models.trace import Trace
from ..physics.dynamics import peak_gain_pump_rate
from ..physics.dynamics_helpers.irf import emg
from ..physics.spectra_helpers.lineshapes import (
    FOUR_LN2,
    coupled_transmission,
    eq1_transmission,
    gain_percent,
)

INF = float("inf")
EDGE_FRACTION = 0.10


@dataclass(frozen=True)
class FitModel:
    """
    A family instantiated for one fit: parameter names, start point, bounds and constants.

    Infinite bounds mean "unbounded".
    """
    name: str
    names: Tuple[str, ...]
    initial: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    constants: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        for attr in ("initial", "lower", "upper"):
            arr = np.asarray(getattr(self, attr), dtype=float)
            if arr.size != len(self.names):
                raise DomainError(f"{self.name}: {attr} has {arr.size} entries for {len(self.names)} parameters")
            object.__setattr__(self, attr, arr)
        if np.any(np.isnan(self.lower)) or np.any(np.isnan(self.upper)):
            raise DomainError(f"{self.name}: bounds must not be NaN")
        if np.any(self.lower >= self.upper):
            raise DomainError(f"{self.name}: every lower bound must be below its upper bound")
        outside = (self.initial < self.lower) | (self.initial > self.upper)
        if np.any(outside):
            bad = [n for n, o in zip(self.names, outside) if o]
            raise DomainError(f"{self.name}: initial values outside bounds for {bad}")

    def with_initial(self, **values: float) -> "FitModel":
        initial = self.initial.copy()
        for key, value in values.items():
            initial[self.names.index(key)] = value
        return FitModel(self.name, self.names, initial, self.lower, self.upper, self.constants)


@dataclass(frozen=True)
class ModelFamily:
    name: str
    names: Tuple[str, ...]
    function: Callable[[np.ndarray, np.ndarray, Mapping[str, float]], np.ndarray]
    guess: Callable[[Trace, Mapping[str, float]], Tuple[List[float], List[float], List[float]]]
    jacobian: Optional[Callable[[np.ndarray, np.ndarray, Mapping[str, float]], np.ndarray]] = None
    required_constants: Tuple[str, ...] = ()
    description: str = ""
    defaults: Optional[Callable[[Trace, Mapping[str, float]], Dict[str, float]]] = None

    def build(self, trace: Trace, constants: Optional[Mapping[str, float]] = None) -> FitModel:
        consts = dict(constants or {})
        missing = [c for c in self.required_constants if c not in consts]
        if missing:
            raise DomainError(f"{self.name} fit needs constants {missing}")
        if self.defaults is not None:
            for key, value in self.defaults(trace, consts).items():
                consts.setdefault(key, value)
        initial, lower, upper = self.guess(trace, consts)
        initial = np.clip(np.asarray(initial, dtype=float), lower, upper)
        return FitModel(self.name, self.names, initial, np.asarray(lower), np.asarray(upper), consts)


# =============================================================================
# Guess helpers
# =============================================================================

def edge_baseline(y: np.ndarray) -> float:
    n = max(1, int(round(EDGE_FRACTION * y.size)))
    return float(np.mean(np.concatenate([y[:n], y[-n:]])))


def half_width(x: np.ndarray, dev: np.ndarray, i: int) -> float:
    """Width between the half-maximum crossings around index i."""
    half = 0.5 * abs(dev[i])
    mag = np.abs(dev)
    left = i
    while left > 0 and mag[left - 1] >= half:
        left -= 1
    right = i
    while right < x.size - 1 and mag[right + 1] >= half:
        right += 1
    step = float(np.min(np.diff(x)))
    return max(float(x[right] - x[left]), 2.0 * step)


def _peak_guess(trace: Trace):
    x, y = trace.x, trace.y
    base = edge_baseline(y)
    dev = y - base
    i = int(np.argmax(np.abs(dev)))
    span = float(x[-1] - x[0])
    step = float(np.min(np.diff(x)))
    initial = [float(x[i]), half_width(x, dev, i), float(dev[i]), base]
    lower = [float(x[0]), 0.1 * step, -INF, -INF]
    upper = [float(x[-1]), 10.0 * span, INF, INF]
    return initial, lower, upper


# =============================================================================
# Lorentzian / Gaussian
# =============================================================================

def _lorentzian(x, p, c):
    center, fwhm, amp, base = p
    hw = 0.5 * fwhm
    u = x - center
    return base + amp * hw * hw / (u * u + hw * hw)


def _lorentzian_jac(x, p, c):
    center, fwhm, amp, base = p
    hw = 0.5 * fwhm
    u = x - center
    den = u * u + hw * hw
    shape = hw * hw / den
    return np.column_stack([
        amp * 2.0 * u * hw * hw / (den * den),
        amp * hw * u * u / (den * den),
        shape,
        np.ones_like(x),
    ])


def _gaussian(x, p, c):
    center, fwhm, amp, base = p
    u = x - center
    return base + amp * np.exp(-FOUR_LN2 * u * u / (fwhm * fwhm))


def _gaussian_jac(x, p, c):
    center, fwhm, amp, base = p
    u = x - center
    g = np.exp(-FOUR_LN2 * u * u / (fwhm * fwhm))
    return np.column_stack([
        amp * g * 2.0 * FOUR_LN2 * u / (fwhm * fwhm),
        amp * g * 2.0 * FOUR_LN2 * u * u / fwhm ** 3,
        g,
        np.ones_like(x),
    ])


# =============================================================================
# Decays
# =============================================================================

def _onset(trace: Trace, c: Mapping[str, float]) -> float:
    """
    Decay start: the given t0, else the maximum of a plain decay, else
    (with an IRF sigma) the half-rise point of the leading edge.
    """
    if "t0" in c:
        return float(c["t0"])
    x, y = trace.x, trace.y
    peak = int(np.argmax(y))
    if "sigma" not in c or peak == 0:
        return float(x[peak])
    tail = max(1, int(round(EDGE_FRACTION * y.size)))
    level = 0.5 * (y[peak] + float(np.median(y[-tail:])))
    below = np.nonzero(y[:peak] < level)[0]
    if below.size == 0:
        return float(x[peak])
    i = int(below[-1])
    frac = (level - y[i]) / (y[i + 1] - y[i])
    return float(x[i] + frac * (x[i + 1] - x[i]))


def _decay_defaults(trace: Trace, c: Mapping[str, float]) -> Dict[str, float]:
    return {"t0": _onset(trace, c)}


def _exponential(x, p, c):
    amp, tau, offset = p
    u = x - c["t0"]
    on = u >= 0
    decay = np.where(on, np.exp(-np.where(on, u, 0.0) / tau), 0.0)
    return offset + amp * decay


def _exponential_jac(x, p, c):
    amp, tau, offset = p
    u = x - c["t0"]
    on = u >= 0
    decay = np.where(on, np.exp(-np.where(on, u, 0.0) / tau), 0.0)
    return np.column_stack([decay, amp * decay * np.where(on, u, 0.0) / (tau * tau), np.ones_like(x)])


def _decay_guess(trace: Trace, c: Mapping[str, float]):
    x, y = trace.x, trace.y
    t0 = _onset(trace, c)
    tail = max(1, int(round(EDGE_FRACTION * y.size)))
    offset = float(np.median(y[-tail:]))
    after = x >= t0
    amp = float(np.max(y[after]) - offset) if np.any(after) else float(np.max(y) - offset)
    level = offset + amp / math.e
    below = np.nonzero(after & (y <= level))[0]
    span = float(x[-1] - x[0])
    step = float(np.min(np.diff(x)))
    tau = float(x[below[0]] - t0) if below.size else 0.3 * span
    tau = max(tau, 2.0 * step)
    return [amp, tau, offset], [-INF, 0.1 * step, -INF], [INF, 10.0 * span, INF]


def _exp_irf(x, p, c):
    amp, tau, offset = p
    return offset + emg(x, amp, tau, c["sigma"], c["t0"])


# =============================================================================
# Saturation and amplification
# =============================================================================

def _saturation(x, p, c):
    n_crit, beta_alpha = p
    return eq1_transmission(x / n_crit, beta_alpha)


def _saturation_guess(trace: Trace, c: Mapping[str, float]):
    x, y = trace.x, np.sqrt(np.clip(trace.y, 0.0, None))
    ba = float(np.clip(1.0 - y[0], 1e-3, 0.999))
    crossing = np.nonzero(y >= 1.0 - 0.5 * ba)[0]
    n_crit = float(x[crossing[0]]) if crossing.size and x[crossing[0]] > 0 else float(np.median(x[x > 0]))
    return [n_crit, ba], [1e-9 * max(float(x[-1]), 1.0), 0.0], [INF, 1.0]


def _amplification(x, p, c):
    scale, gamma_star = p
    return gain_percent(scale * x, c["gamma"], gamma_star, c["beta_alpha"])


def _amplification_guess(trace: Trace, c: Mapping[str, float]):
    gamma, ba = c["gamma"], c["beta_alpha"]
    x, y = trace.x, trace.y
    i = int(np.argmax(y))
    peak_value = float(y[i])
    ideal = float(gain_percent(3.0 * gamma, gamma, 0.0, ba))

    def excess(gs: float) -> float:
        k = peak_gain_pump_rate(gamma, gs)
        return float(gain_percent(k, gamma, gs, ba)) - peak_value

    if 0.0 < peak_value < ideal and excess(1e4 * gamma) < 0:
        gamma_star = float(brentq(excess, 0.0, 1e4 * gamma))
    else:
        gamma_star = 0.0
    x_peak = float(x[i]) if x[i] > 0 else float(np.max(x))
    scale = peak_gain_pump_rate(gamma, gamma_star) / x_peak
    return [scale, gamma_star], [0.0, 0.0], [INF, 1e4 * gamma]


# =============================================================================
# Coupled response
# =============================================================================

def _coupled(x, p, c):
    zpl, gamma, g, cavity_detuning = p
    gamma2 = 0.5 * gamma + c.get("pure_dephasing", 0.0)
    return coupled_transmission(x - zpl, cavity_detuning, c["kappa"], gamma2, g * g)


def _coupled_guess(trace: Trace, c: Mapping[str, float]):
    x, y = trace.x, trace.y
    kappa = c["kappa"]
    base = edge_baseline(y)
    i_min, i_max = int(np.argmin(y)), int(np.argmax(y))
    above, below = y[i_max] - base, base - y[i_min]
    if above > 0.25 * below:
        zpl = 0.5 * float(x[i_min] + x[i_max])
    else:
        zpl = float(x[i_min])
    depth = float(np.clip(y[i_min] / max(base, 1e-12), 1e-6, 1.0))
    coop = max(1.0 / math.sqrt(depth) - 1.0, 1e-3)
    width = half_width(x, y - base, i_min)
    gamma = width / (1.0 + coop)
    g = math.sqrt(coop * kappa * gamma / 4.0)
    step = float(np.min(np.diff(x)))
    span = float(x[-1] - x[0])
    start = float(c.get("cavity_detuning_start", 0.5 * kappa))
    return (
        [zpl, gamma, g, start],
        [float(x[0]), 0.01 * step, 0.0, -3.0 * kappa],
        [float(x[-1]), span, kappa, 3.0 * kappa],
    )


# =============================================================================
# Registry
# =============================================================================

_FAMILIES: Dict[str, ModelFamily] = {
    "lorentzian": ModelFamily(
        "lorentzian", ("center", "fwhm", "amplitude", "baseline"),
        _lorentzian, lambda t, c: _peak_guess(t), _lorentzian_jac,
        description="baseline + amplitude x unit-peak Lorentzian",
    ),
    "gaussian": ModelFamily(
        "gaussian", ("center", "fwhm", "amplitude", "baseline"),
        _gaussian, lambda t, c: _peak_guess(t), _gaussian_jac,
        description="baseline + amplitude x unit-peak Gaussian",
    ),
    "exponential": ModelFamily(
        "exponential", ("amplitude", "tau", "offset"),
        _exponential, _decay_guess, _exponential_jac, defaults=_decay_defaults,
        description="exponential decay from t0 on a constant offset",
    ),
    "exp_irf": ModelFamily(
        "exp_irf", ("amplitude", "tau", "offset"),
        _exp_irf, _decay_guess, None, required_constants=("sigma",), defaults=_decay_defaults,
        description="exponential decay convolved with a Gaussian IRF",
    ),
    "saturation": ModelFamily(
        "saturation", ("n_crit", "beta_alpha"),
        _saturation, _saturation_guess,
        description="[1 - beta alpha / (1 + flux / n_crit)]^2",
    ),
    "coupled_response": ModelFamily(
        "coupled_response", ("zpl_offset", "gamma_fwhm", "g", "cavity_detuning"),
        _coupled, _coupled_guess, required_constants=("kappa",),
        description="cavity transmission with one coupled molecule",
    ),
    "amplification": ModelFamily(
        "amplification", ("pump_scale", "pure_dephasing"),
        _amplification, _amplification_guess, required_constants=("gamma", "beta_alpha"),
        description="CW gain in percent versus pump power",
    ),
}


def get_family(name: str) -> ModelFamily:
    """
    Retrieve a fit model family by name.

    Raises:
        ValueError: If name is not registered
    """
    if name not in _FAMILIES:
        raise ValueError(
            f"Unknown fit model: {name}. "
            f"Available: {list(_FAMILIES.keys())}"
        )
    return _FAMILIES[name]


def get_all_families() -> List[str]:
    return list(_FAMILIES.keys())
