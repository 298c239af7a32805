# molcav/physics/spectra_helpers/lineshapes.py
"""
Vectorized lineshape kernels.

Plain numpy functions of plain floats, shared by the forward models in
physics.spectra / physics.dynamics and by the fit model families.
"""

from __future__ import annotations

import numpy as np

FOUR_LN2 = 4.0 * np.log(2.0)


def lorentzian(x, center: float, fwhm: float):
    """Unit-peak Lorentzian (fwhm/2)^2 / ((x - center)^2 + (fwhm/2)^2)."""
    hw = 0.5 * fwhm
    u = np.asarray(x, dtype=float) - center
    return hw * hw / (u * u + hw * hw)


def gaussian(x, center: float, fwhm: float):
    """Unit-peak Gaussian exp(-4 ln2 (x - center)^2 / fwhm^2)."""
    u = np.asarray(x, dtype=float) - center
    return np.exp(-FOUR_LN2 * u * u / (fwhm * fwhm))


def coupled_transmission(
    probe_detuning,
    cavity_detuning: float,
    kappa: float,
    gamma2: float,
    g_eff_sq: float,
):
    """
    Relative transmission |t_coupled / t_bare|^2 of a cavity with one emitter.

    t = (kappa/2) / [kappa/2 + i d_c + g_eff^2 / (gamma2 + i d_m)] with
    d_m = probe - ZPL and d_c = d_m - cavity_detuning. Dividing by the bare
    response leaves |(kappa/2 + i d_c) / (kappa/2 + i d_c + g^2/(gamma2 + i d_m))|^2.

    Args:
        probe_detuning: Probe minus 00ZPL (Hz), scalar or array
        cavity_detuning: Cavity centre minus 00ZPL (Hz)
        kappa: Cavity FWHM (Hz)
        gamma2: Coherence decay gamma/2 + gamma* (Hz)
        g_eff_sq: Effective g^2 (Hz^2), already reduced by saturation
    """
    dm = np.asarray(probe_detuning, dtype=float)
    cavity = 0.5 * kappa + 1j * (dm - cavity_detuning)
    molecule = g_eff_sq / (gamma2 + 1j * dm)
    ratio = cavity / (cavity + molecule)
    return ratio.real ** 2 + ratio.imag ** 2


def eq1_transmission(saturation, beta_alpha: float):
    """Resonant saturation model T = [1 - beta alpha / (1 + S)]^2."""
    s = np.asarray(saturation, dtype=float)
    return (1.0 - beta_alpha / (1.0 + s)) ** 2


def pumped_line_factor(probe_detuning, gamma: float, gamma2: float):
    """
    Lambda(nu) = (gamma/2) gamma2 / (gamma2^2 + d^2).

    FWHM 2 gamma2, peak (gamma/2)/gamma2: unity for an unpumped molecule
    without pure dephasing, reduced as pumping and dephasing broaden the line.
    """
    d = np.asarray(probe_detuning, dtype=float)
    return 0.5 * gamma * gamma2 / (gamma2 * gamma2 + d * d)


def resonant_gain_factor(pump_rate, gamma: float, pure_dephasing: float):
    """
    (rho_ee - rho_gg) * Lambda(0) of the weakly probed, incoherently pumped molecule.

    Equals gamma (k - gamma) / ((k + gamma)(k + gamma + 2 gamma*)).
    """
    k = np.asarray(pump_rate, dtype=float)
    return gamma * (k - gamma) / ((k + gamma) * (k + gamma + 2.0 * pure_dephasing))


def gain_percent(pump_rate, gamma: float, pure_dephasing: float, beta_alpha: float):
    """Resonant CW transmission change T - 1 in percent."""
    t = (1.0 + beta_alpha * resonant_gain_factor(pump_rate, gamma, pure_dephasing)) ** 2
    return 100.0 * (t - 1.0)
