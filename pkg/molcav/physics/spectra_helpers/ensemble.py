# molcav/physics/spectra_helpers/ensemble.py
"""
Inhomogeneous molecule ensembles for the cavity excitation spectrum.

Each molecule adds a narrow Lorentzian whose height is set by the cavity
filter at its resonance, its saturation and its lateral overlap with
the Gaussian mode. Background molecules add a broad pedestal that
follows the cavity Lorentzian.
"""

from __future__ import annotations
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from ...errors import DomainError, require_non_negative, require_positive
from ...models.params import CavityParams, DriveParams, EmitterParams
from ...utils.log import setup_logger
from .lineshapes import lorentzian

log = setup_logger("physics.spectra_helpers.ensemble")


@dataclass(frozen=True)
class Molecule:
    """One molecule: absolute 00ZPL frequency, lateral position, optional linewidth override."""
    zpl_freq: float
    position: Tuple[float, float] = (0.0, 0.0)
    gamma_fwhm: Optional[float] = None

    def __post_init__(self):
        if not (math.isfinite(self.zpl_freq) and all(math.isfinite(p) for p in self.position)):
            raise DomainError("molecule frequency and position must be finite")
        if self.gamma_fwhm is not None:
            require_positive("gamma_fwhm", self.gamma_fwhm)


@dataclass(frozen=True)
class MoleculeEnsemble:
    """Molecules sharing an inhomogeneous band."""
    molecules: Tuple[Molecule, ...]
    inhomogeneous_fwhm: float
    seed: Optional[int] = None

    def __post_init__(self):
        require_positive("inhomogeneous_fwhm", self.inhomogeneous_fwhm)
        object.__setattr__(self, "molecules", tuple(self.molecules))

    def __len__(self) -> int:
        return len(self.molecules)

    @classmethod
    def sample(
        cls,
        count: int,
        band_center: float,
        inhomogeneous_fwhm: float,
        lateral_radius: float,
        seed: int,
    ) -> "MoleculeEnsemble":
        """
        Draw molecules uniformly over the band and over a disk of lateral_radius.

        The band is taken as flat over +/- inhomogeneous_fwhm/2 around band_center.
        """
        if count < 1:
            raise DomainError(f"ensemble size must be >= 1 (got {count})")
        require_positive("inhomogeneous_fwhm", inhomogeneous_fwhm)
        require_non_negative("lateral_radius", lateral_radius)

        rng = np.random.default_rng(seed)
        freqs = band_center + inhomogeneous_fwhm * (rng.random(count) - 0.5)
        radius = lateral_radius * np.sqrt(rng.random(count))
        angle = 2.0 * np.pi * rng.random(count)
        molecules = tuple(
            Molecule(float(f), (float(r * np.cos(a)), float(r * np.sin(a))))
            for f, r, a in zip(freqs, radius, angle)
        )
        log.debug(f"[ensemble] sampled {count} molecules, seed={seed}")
        return cls(molecules, inhomogeneous_fwhm, seed)

    def detunings(self, cavity: CavityParams) -> np.ndarray:
        """Molecule resonance minus cavity resonance (Hz)."""
        return np.array([m.zpl_freq for m in self.molecules]) - cavity.resonance_freq

    def radii_sq(self) -> np.ndarray:
        return np.array([m.position[0] ** 2 + m.position[1] ** 2 for m in self.molecules])


def waist_radius(waist_fwhm: float) -> float:
    """1/e^2 intensity radius of a Gaussian mode with intensity FWHM waist_fwhm."""
    return waist_fwhm / math.sqrt(2.0 * math.log(2.0))


def line_heights(
    ensemble: MoleculeEnsemble,
    cavity: CavityParams,
    excitation: DriveParams,
    *,
    retracted: bool = False,
) -> np.ndarray:
    """
    Peak height of every molecular line.

    height = cavity filter x S/(1+S) x exp(-2 r^2 / w^2). With the
    micromirror retracted the cavity filter is flat (1).
    """
    s = excitation.saturation
    w = waist_radius(cavity.mode_waist_fwhm)
    overlap = np.exp(-2.0 * ensemble.radii_sq() / (w * w))
    if retracted:
        cavity_filter = np.ones(len(ensemble))
    else:
        cavity_filter = lorentzian(ensemble.detunings(cavity), 0.0, cavity.kappa_fwhm)
    return cavity_filter * (s / (1.0 + s)) * overlap


def line_widths(ensemble: MoleculeEnsemble, emitter: EmitterParams, saturation: float) -> np.ndarray:
    """Power-broadened linewidths gamma (1 + S)."""
    gammas = np.array([
        m.gamma_fwhm if m.gamma_fwhm is not None else emitter.gamma_fwhm
        for m in ensemble.molecules
    ])
    return gammas * (1.0 + saturation)


def sum_lines(
    grid: np.ndarray,
    centers: np.ndarray,
    heights: np.ndarray,
    widths: np.ndarray,
    chunk: int = 32,
) -> np.ndarray:
    """Sum of Lorentzian lines on a grid, evaluated in molecule chunks."""
    out = np.zeros_like(grid, dtype=float)
    for start in range(0, centers.size, chunk):
        c = centers[start:start + chunk, None]
        h = heights[start:start + chunk, None]
        hw = 0.5 * widths[start:start + chunk, None]
        u = grid[None, :] - c
        out += np.sum(h * hw * hw / (u * u + hw * hw), axis=0)
    return out


def default_grid(half_span: float, step: float) -> np.ndarray:
    """Symmetric detuning grid [-half_span, half_span] with the given step."""
    require_positive("half_span", half_span)
    require_positive("step", step)
    n = int(round(2.0 * half_span / step)) + 1
    return np.linspace(-half_span, half_span, n)


def summarize(heights: np.ndarray, detunings: Sequence[float]) -> str:
    """One-line description used in logs."""
    return (
        f"{len(heights)} lines, detuning span "
        f"{(np.max(detunings) - np.min(detunings)) / 1e9:.1f} GHz, max height {np.max(heights):.3g}"
    )
