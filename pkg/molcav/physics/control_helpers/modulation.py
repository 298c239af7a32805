# molcav/physics/control_helpers/modulation.py
"""
Sinusoidal cavity-length modulation and harmonic analysis of the response.
"""

from __future__ import annotations
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Optional

import numpy as np
from scipy.fft import rfft, rfftfreq
from scipy.signal import detrend

from ...errors import DomainError, require_non_negative, require_positive

# Floor of the dB levels, relative to the fundamental power
LEVEL_FLOOR = 1e-30


@dataclass(frozen=True)
class ModulationConfig:
    """
    x(t) = center + amplitude sin(2 pi f t), lengths in metres.

    Invariants: sample_rate > 2 f and at least 10 cycles.
    """
    center: float
    amplitude: float
    frequency: float
    duration: float
    sample_rate: float

    def __post_init__(self):
        if not math.isfinite(self.center):
            raise DomainError("modulation center must be finite")
        require_non_negative("modulation amplitude", self.amplitude)
        require_positive("modulation frequency", self.frequency)
        require_positive("duration", self.duration)
        require_positive("sample_rate", self.sample_rate)
        if not self.sample_rate > 2.0 * self.frequency:
            raise DomainError(
                f"sample rate {self.sample_rate!r} Hz must exceed twice the modulation "
                f"frequency ({2.0 * self.frequency!r} Hz)"
            )
        if self.duration * self.frequency < 10.0 - 1e-9:
            raise DomainError(
                f"duration covers {self.duration * self.frequency:.3g} cycles; need >= 10"
            )

    @classmethod
    def for_cycles(cls, center: float, amplitude: float, frequency: float,
                   cycles: float = 10.0, samples_per_period: int = 100) -> "ModulationConfig":
        return cls(center, amplitude, frequency, cycles / frequency, samples_per_period * frequency)

    @property
    def period(self) -> float:
        return 1.0 / self.frequency

    def sample_times(self) -> np.ndarray:
        n = int(round(self.duration * self.sample_rate))
        return np.arange(n) / self.sample_rate

    def displacement(self, times) -> np.ndarray:
        t = np.asarray(times, dtype=float)
        return self.center + self.amplitude * np.sin(2.0 * math.pi * self.frequency * t)


def whole_periods(values: np.ndarray, dt: float, fundamental: float) -> np.ndarray:
    """Truncate to the largest integer number of fundamental periods."""
    n = values.size
    cycles = math.floor(n * dt * fundamental + 1e-9)
    if cycles < 1:
        raise DomainError("trace shorter than one period of the fundamental")
    keep = int(round(cycles / (fundamental * dt)))
    return values[:min(keep, n)]


def one_sided_power(values: np.ndarray, dt: float):
    """
    One-sided power of the mean-removed series.

    P_k = 2|X_k|^2 / N^2 except at DC and Nyquist, so sum(P) equals the
    mean square of the detrended series.

    Returns:
        (frequencies, power)
    """
    y = detrend(np.asarray(values, dtype=float), type="constant")
    n = y.size
    spectrum = rfft(y)
    power = 2.0 * np.abs(spectrum) ** 2 / (n * n)
    power[0] *= 0.5
    if n % 2 == 0:
        power[-1] *= 0.5
    return rfftfreq(n, dt), power


def levels_db(power: np.ndarray, reference: float) -> np.ndarray:
    """10 log10(P / P_ref), floored at LEVEL_FLOOR x P_ref."""
    if not reference > 0:
        raise DomainError("reference power must be > 0")
    return 10.0 * np.log10(np.maximum(power, LEVEL_FLOOR * reference) / reference)


def nearest_bin(freqs: np.ndarray, target: float) -> int:
    return int(np.argmin(np.abs(freqs - target)))


def harmonic_bins(freqs: np.ndarray, fundamental: float, orders: Iterable[int]) -> Dict[int, int]:
    """Index of the bin closest to every requested harmonic order."""
    top = freqs[-1]
    bins = {}
    for order in orders:
        if order < 1 or order * fundamental > top + 1e-9 * top:
            raise DomainError(f"harmonic {order} of {fundamental!r} Hz lies above Nyquist ({top!r} Hz)")
        bins[order] = nearest_bin(freqs, order * fundamental)
    return bins


def reference_power(freqs: np.ndarray, power: np.ndarray, fundamental: Optional[float]) -> float:
    """Power of the fundamental bin, or of the strongest non-DC bin without one."""
    if fundamental is not None:
        return float(power[nearest_bin(freqs, fundamental)])
    return float(np.max(power[1:]))
