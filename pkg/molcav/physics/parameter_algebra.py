# molcav/physics/parameter_algebra.py
"""
Closed-form parameter algebra shared by every forward model.

Rates, linewidths, cooperativity, Purcell/branching arithmetic and the
plane-mirror length-to-frequency conversion. All functions are pure;
frequencies are ordinary frequencies in Hz.
"""

from __future__ import annotations
import math
from dataclasses import dataclass

from scipy.constants import c as SPEED_OF_LIGHT

from ..errors import (
    DomainError,
    InconsistencyError,
    require_non_negative,
    require_positive,
    require_unit_interval,
)
from ..models.params import CavityParams, SystemParams
from ..utils.log import setup_logger

log = setup_logger("physics.parameter_algebra")


# =============================================================================
# Rates and linewidths
# =============================================================================

def cooperativity(g: float, kappa: float, gamma: float) -> float:
    """
    Single-emitter cooperativity C = 4 g^2 / (kappa gamma).

    Args:
        g: Coupling strength g/2pi (Hz), zero allowed
        kappa: Cavity linewidth (Hz, FWHM)
        gamma: Emitter linewidth (Hz, FWHM)

    Raises:
        DomainError: negative g or non-positive kappa/gamma
    """
    require_non_negative("g", g)
    require_positive("kappa", kappa)
    require_positive("gamma", gamma)
    return 4.0 * g ** 2 / (kappa * gamma)


def linewidth_from_lifetime(tau: float) -> float:
    """Lifetime-limited FWHM 1/(2 pi tau) in Hz."""
    require_positive("tau", tau)
    return 1.0 / (2.0 * math.pi * tau)


def lifetime_from_linewidth(gamma: float) -> float:
    """Inverse of linewidth_from_lifetime."""
    require_positive("gamma", gamma)
    return 1.0 / (2.0 * math.pi * gamma)


def quality_factor(resonance_freq: float, kappa: float) -> float:
    """Q = resonance frequency / linewidth."""
    require_positive("resonance_freq", resonance_freq)
    require_positive("kappa", kappa)
    return resonance_freq / kappa


def free_spectral_range(finesse: float, kappa: float) -> float:
    """FSR = finesse x linewidth."""
    require_positive("finesse", finesse)
    require_positive("kappa", kappa)
    return finesse * kappa


def effective_length(fsr: float) -> float:
    """Optical length c / (2 FSR) in metres."""
    require_positive("fsr", fsr)
    return SPEED_OF_LIGHT / (2.0 * fsr)


# =============================================================================
# Purcell enhancement and branching
# =============================================================================

def purcell_branching(tau_cav: float, tau_ref: float, alpha_ref: float) -> tuple[float, float]:
    """
    Enhancement of the 00ZPL channel from a lifetime pair.

    Solves (1 - alpha_ref + alpha_ref F) / tau_ref = 1 / tau_cav for F:
    only the ZPL channel is accelerated, all other decay channels keep
    their reference rate.

    Args:
        tau_cav: Lifetime inside the cavity (s)
        tau_ref: Reference lifetime without the ZPL enhancement (s)
        alpha_ref: Reference branching ratio into the 00ZPL

    Returns:
        (zpl_enhancement F, in-cavity branching ratio alpha_cav)

    Raises:
        DomainError: tau_cav > tau_ref / (1 - alpha_ref), where no F >= 0 exists
    """
    require_positive("tau_cav", tau_cav)
    require_positive("tau_ref", tau_ref)
    require_unit_interval("alpha_ref", alpha_ref, open_low=True)

    if alpha_ref < 1.0:
        bound = tau_ref / (1.0 - alpha_ref)
        if tau_cav > bound:
            raise DomainError(
                f"tau_cav = {tau_cav!r} s exceeds the feasibility bound "
                f"tau_ref / (1 - alpha_ref) = {bound!r} s; no enhancement >= 0 reproduces it"
            )

    ratio = tau_ref / tau_cav
    enhancement = (ratio - 1.0 + alpha_ref) / alpha_ref
    alpha_cav = alpha_ref * enhancement / ratio
    return enhancement, alpha_cav


# =============================================================================
# Extinction and saturation
# =============================================================================

def alpha_beta_product(t_dip: float) -> float:
    """beta * alpha_cav from a weak-probe (S << 1) transmission minimum."""
    if not (0.0 < t_dip <= 1.0):
        raise DomainError(f"t_dip must lie in (0, 1] (got {t_dip!r})")
    return 1.0 - math.sqrt(t_dip)


def beta_from_extinction(t_dip: float, alpha_cav: float) -> float:
    """
    Invert the S << 1 limit of T = [1 - beta alpha / (1 + S)]^2 for beta.

    Raises:
        DomainError: t_dip outside (0, 1] or alpha_cav outside (0, 1]
        InconsistencyError: the dip implies beta > 1 for this alpha_cav
    """
    require_unit_interval("alpha_cav", alpha_cav, open_low=True)
    beta = alpha_beta_product(t_dip) / alpha_cav
    if beta > 1.0:
        raise InconsistencyError(
            f"transmission dip {t_dip!r} with alpha_cav = {alpha_cav!r} implies beta = {beta!r} > 1"
        )
    return beta


def saturation_parameter(photon_flux: float, n_crit: float) -> float:
    """S = flux / n_crit, fluxes in photons per emitter lifetime."""
    require_non_negative("photon_flux", photon_flux)
    require_positive("n_crit", n_crit)
    return photon_flux / n_crit


def photon_flux_for_saturation(saturation: float, n_crit: float) -> float:
    """Photon flux per lifetime that produces a given S."""
    require_non_negative("saturation", saturation)
    require_positive("n_crit", n_crit)
    return saturation * n_crit


# =============================================================================
# Cavity length
# =============================================================================

def length_to_detuning(displacement: float, cavity: CavityParams) -> float:
    """
    First-order plane-mirror model: d(nu) = nu * dL / L_eff.

    Accepts scalars or numpy arrays for the displacement (m).
    """
    return cavity.resonance_freq * displacement / cavity.effective_length


def detuning_to_length(detuning: float, cavity: CavityParams) -> float:
    """Inverse of length_to_detuning (Hz to m)."""
    return detuning * cavity.effective_length / cavity.resonance_freq


# =============================================================================
# Consistency between the two extinction models
# =============================================================================

@dataclass(frozen=True)
class ConsistencyReport:
    """
    Side-by-side numbers of the coherent (linear) and the single-pass extinction models.

    The two are related through C ~ beta alpha_cav but are not forced to agree.
    """
    cooperativity: float
    beta_alpha: float
    linear_dip: float
    eq1_dip: float

    @property
    def relative_gap(self) -> float:
        return (self.eq1_dip - self.linear_dip) / self.eq1_dip if self.eq1_dip else 0.0


def consistency_report(system: SystemParams) -> ConsistencyReport:
    """Compare the double-resonance dip 1 - 1/(1+C)^2 with the single-pass dip 1 - (1 - beta alpha)^2."""
    coop = system.cooperativity
    ba = system.beta_alpha
    report = ConsistencyReport(
        cooperativity=coop,
        beta_alpha=ba,
        linear_dip=1.0 - 1.0 / (1.0 + coop) ** 2,
        eq1_dip=1.0 - (1.0 - ba) ** 2,
    )
    log.debug(
        f"[algebra] C={coop:.4f} beta*alpha={ba:.4f} "
        f"dips linear={report.linear_dip:.4f} eq1={report.eq1_dip:.4f}"
    )
    return report
