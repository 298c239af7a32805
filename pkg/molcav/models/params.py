# molcav/models/params.py
"""
Immutable parameter records for the molecule-cavity system.

Convention: every rate and frequency is an ordinary frequency in Hz
(the angular value divided by 2*pi). Linewidths are intensity FWHM.
Conversion to angular rates happens only inside the Bloch integrator.
"""

from __future__ import annotations
import math
from dataclasses import dataclass, replace
from typing import Optional

from scipy.constants import c as SPEED_OF_LIGHT

from ..errors import (
    DomainError,
    InconsistencyError,
    require_non_negative,
    require_positive,
    require_unit_interval,
)

# Relative tolerance used when re-checking cached derived values
CACHE_RTOL = 1e-12


def _require_finite(name: str, value: float) -> float:
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite (got {value!r})")
    return value


# =============================================================================
# Cavity
# =============================================================================

@dataclass(frozen=True)
class CavityParams:
    """
    Open microcavity described by its linewidth and finesse.

    The effective length follows from the free spectral range rather than
    from the mirror gap, because the field penetrates into the Bragg mirror.
    """
    kappa_fwhm: float
    finesse: float
    resonance_freq: float
    mode_volume: float = 1.7          # units of lambda^3, descriptive only
    mode_waist_fwhm: float = 1.0e-6   # m, intensity FWHM
    axis_angle_deg: float = 90.0
    per_axis_offset: float = 0.0      # Hz, a-axis minus b-axis resonance

    def __post_init__(self):
        require_positive("kappa_fwhm", self.kappa_fwhm)
        require_positive("finesse", self.finesse)
        require_positive("resonance_freq", self.resonance_freq)
        require_positive("mode_volume", self.mode_volume)
        require_positive("mode_waist_fwhm", self.mode_waist_fwhm)
        _require_finite("axis_angle_deg", self.axis_angle_deg)
        _require_finite("per_axis_offset", self.per_axis_offset)
        if not self.fsr > self.kappa_fwhm:
            raise DomainError(
                f"free spectral range ({self.fsr!r} Hz) must exceed kappa_fwhm "
                f"({self.kappa_fwhm!r} Hz), i.e. finesse > 1"
            )

    @property
    def fsr(self) -> float:
        """Free spectral range = finesse x linewidth (Hz)."""
        return self.finesse * self.kappa_fwhm

    @property
    def effective_length(self) -> float:
        """c / (2 FSR), in metres."""
        return SPEED_OF_LIGHT / (2.0 * self.fsr)

    @property
    def quality_factor(self) -> float:
        return self.resonance_freq / self.kappa_fwhm

    @property
    def resonance_wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.resonance_freq

    def with_finesse(self, finesse: float) -> "CavityParams":
        """Same mirrors spacing (FSR kept), different finesse: kappa scales as 1/finesse."""
        return replace(self, finesse=finesse, kappa_fwhm=self.fsr / finesse)


# =============================================================================
# Emitter
# =============================================================================

@dataclass(frozen=True)
class EmitterParams:
    """Single molecule reduced to its 00ZPL transition."""
    zpl_freq: float
    gamma_fwhm: float
    branching_alpha: float = 1.0
    pure_dephasing: float = 0.0
    dipole_angle_deg: float = 0.0

    def __post_init__(self):
        require_positive("zpl_freq", self.zpl_freq)
        require_positive("gamma_fwhm", self.gamma_fwhm)
        require_unit_interval("branching_alpha", self.branching_alpha, open_low=True)
        require_non_negative("pure_dephasing", self.pure_dephasing)
        _require_finite("dipole_angle_deg", self.dipole_angle_deg)

    @classmethod
    def from_lifetime(cls, lifetime: float, zpl_freq: float, **kwargs) -> "EmitterParams":
        """Build from an excited-state lifetime instead of a linewidth."""
        require_positive("lifetime", lifetime)
        return cls(zpl_freq=zpl_freq, gamma_fwhm=1.0 / (2.0 * math.pi * lifetime), **kwargs)

    @property
    def lifetime(self) -> float:
        """tau = 1 / (2 pi gamma), seconds."""
        return 1.0 / (2.0 * math.pi * self.gamma_fwhm)

    @property
    def gamma2(self) -> float:
        """Coherence decay rate gamma/2 + gamma* (Hz), without pumping."""
        return 0.5 * self.gamma_fwhm + self.pure_dephasing


# =============================================================================
# Coupling
# =============================================================================

@dataclass(frozen=True)
class CouplingParams:
    """
    Molecule-cavity coupling.

    cooperativity is cached from (g, kappa, gamma) and re-checked on
    construction. Use from_rates() rather than filling the cache by hand.
    """
    g: float
    beta: float
    kappa_fwhm: float
    gamma_fwhm: float
    cooperativity: float

    def __post_init__(self):
        require_non_negative("g", self.g)
        require_unit_interval("beta", self.beta)
        require_positive("kappa_fwhm", self.kappa_fwhm)
        require_positive("gamma_fwhm", self.gamma_fwhm)
        expected = 4.0 * self.g ** 2 / (self.kappa_fwhm * self.gamma_fwhm)
        if not math.isclose(self.cooperativity, expected, rel_tol=CACHE_RTOL, abs_tol=0.0):
            raise InconsistencyError(
                f"cached cooperativity {self.cooperativity!r} disagrees with "
                f"4g^2/(kappa*gamma) = {expected!r}"
            )

    @classmethod
    def from_rates(cls, g: float, kappa: float, gamma: float, beta: float = 0.0) -> "CouplingParams":
        from ..physics.parameter_algebra import cooperativity
        return cls(
            g=g, beta=beta, kappa_fwhm=kappa, gamma_fwhm=gamma,
            cooperativity=cooperativity(g, kappa, gamma),
        )

    def with_kappa(self, kappa: float) -> "CouplingParams":
        return CouplingParams.from_rates(self.g, kappa, self.gamma_fwhm, self.beta)


# =============================================================================
# Drive
# =============================================================================

@dataclass(frozen=True)
class DriveParams:
    """Probe and pump settings. S is derived from the photon flux."""
    probe_detuning: float = 0.0
    cavity_detuning: float = 0.0
    photon_flux: float = 0.0            # photons per emitter lifetime
    critical_photon_number: float = 1.8
    pump_rate: float = 0.0

    def __post_init__(self):
        _require_finite("probe_detuning", self.probe_detuning)
        _require_finite("cavity_detuning", self.cavity_detuning)
        require_non_negative("photon_flux", self.photon_flux)
        require_positive("critical_photon_number", self.critical_photon_number)
        require_non_negative("pump_rate", self.pump_rate)

    @property
    def saturation(self) -> float:
        return self.photon_flux / self.critical_photon_number


# =============================================================================
# Aggregate
# =============================================================================

@dataclass(frozen=True)
class SystemParams:
    """
    Everything a forward model needs, built by models.parameter_file.

    emitter.branching_alpha is the in-cavity (Purcell-modified) branching
    ratio; alpha_ref and the two lifetimes keep the reference data it was
    derived from.
    """
    cavity: CavityParams
    emitter: EmitterParams
    coupling: CouplingParams
    drive: DriveParams
    tau_ref: Optional[float] = None
    tau_cav: Optional[float] = None
    alpha_ref: Optional[float] = None
    zpl_enhancement: Optional[float] = None

    def __post_init__(self):
        if not math.isclose(self.coupling.kappa_fwhm, self.cavity.kappa_fwhm, rel_tol=CACHE_RTOL):
            raise InconsistencyError("coupling was derived for a different cavity linewidth")
        if not math.isclose(self.coupling.gamma_fwhm, self.emitter.gamma_fwhm, rel_tol=CACHE_RTOL):
            raise InconsistencyError("coupling was derived for a different emitter linewidth")

    @property
    def beta_alpha(self) -> float:
        """beta * alpha_cav, the single-pass extinction parameter."""
        return self.coupling.beta * self.emitter.branching_alpha

    @property
    def cooperativity(self) -> float:
        return self.coupling.cooperativity

    def with_cavity(self, cavity: CavityParams) -> "SystemParams":
        """Swap the cavity and re-derive the coupling for its linewidth."""
        return replace(self, cavity=cavity, coupling=self.coupling.with_kappa(cavity.kappa_fwhm))

    def with_emitter(self, emitter: EmitterParams) -> "SystemParams":
        coupling = CouplingParams.from_rates(
            self.coupling.g, self.cavity.kappa_fwhm, emitter.gamma_fwhm, self.coupling.beta
        )
        return replace(self, emitter=emitter, coupling=coupling)

    def with_lifetime(self, lifetime: float) -> "SystemParams":
        """Same molecule with its linewidth set by a measured lifetime."""
        emitter = EmitterParams.from_lifetime(
            lifetime,
            self.emitter.zpl_freq,
            branching_alpha=self.emitter.branching_alpha,
            pure_dephasing=self.emitter.pure_dephasing,
            dipole_angle_deg=self.emitter.dipole_angle_deg,
        )
        return self.with_emitter(emitter)

    def with_drive(self, **changes) -> "SystemParams":
        return replace(self, drive=replace(self.drive, **changes))

    def with_pure_dephasing(self, pure_dephasing: float) -> "SystemParams":
        return replace(self, emitter=replace(self.emitter, pure_dephasing=pure_dephasing))
