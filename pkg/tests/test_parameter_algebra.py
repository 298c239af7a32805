"""Closed-form parameter algebra against the reference numbers."""

import math

import pytest
from scipy.constants import c as SPEED_OF_LIGHT

from molcav.errors import DomainError, InconsistencyError
from molcav.models.params import CavityParams
from molcav.physics.parameter_algebra import (
    alpha_beta_product,
    beta_from_extinction,
    consistency_report,
    cooperativity,
    detuning_to_length,
    effective_length,
    free_spectral_range,
    length_to_detuning,
    lifetime_from_linewidth,
    linewidth_from_lifetime,
    photon_flux_for_saturation,
    purcell_branching,
    quality_factor,
    saturation_parameter,
)


def test_cooperativity_reference_values():
    assert cooperativity(740e6, 250e9, 40e6) == pytest.approx(0.219, abs=1e-3)
    assert cooperativity(0.0, 250e9, 40e6) == 0.0


@pytest.mark.parametrize("g, kappa, gamma", [(-1.0, 1.0, 1.0), (1.0, 0.0, 1.0), (1.0, 1.0, -2.0)])
def test_cooperativity_domain(g, kappa, gamma):
    with pytest.raises(DomainError):
        cooperativity(g, kappa, gamma)


def test_linewidth_lifetime_inverse():
    gamma = linewidth_from_lifetime(3.2e-9)
    assert gamma == pytest.approx(49.736e6, rel=1e-4)
    assert lifetime_from_linewidth(gamma) == pytest.approx(3.2e-9, rel=1e-12)


def test_quality_factor_and_fsr():
    assert quality_factor(SPEED_OF_LIGHT / 784.3e-9, 250e9) == pytest.approx(1529, abs=1)
    assert free_spectral_range(200.0, 250e9) == pytest.approx(50e12)
    assert effective_length(50e12) == pytest.approx(SPEED_OF_LIGHT / 1e14)


def test_purcell_branching_reference():
    enhancement, alpha_cav = purcell_branching(3.2e-9, 3.9e-9, 0.33)
    assert enhancement == pytest.approx(1.66, abs=0.01)
    assert alpha_cav == pytest.approx(0.450, abs=0.005)


def test_purcell_branching_without_shortening():
    enhancement, alpha_cav = purcell_branching(3.9e-9, 3.9e-9, 0.33)
    assert enhancement == pytest.approx(1.0)
    assert alpha_cav == pytest.approx(0.33)


def test_purcell_branching_infeasible_lifetime():
    # bound is tau_ref / (1 - alpha_ref) = 5.82 ns
    with pytest.raises(DomainError, match="feasibility bound"):
        purcell_branching(6.0e-9, 3.9e-9, 0.33)


def test_beta_from_extinction_reference():
    assert beta_from_extinction(0.62, 0.45026) == pytest.approx(0.472, abs=0.005)


def test_beta_above_one_is_inconsistent():
    with pytest.raises(InconsistencyError):
        beta_from_extinction(0.1, 0.3)


def test_extinction_inversion_round_trip():
    ba = alpha_beta_product(0.62)
    assert (1.0 - ba) ** 2 == pytest.approx(0.62, abs=1e-12)


@pytest.mark.parametrize("t_dip", [0.0, 1.2])
def test_extinction_dip_range(t_dip):
    with pytest.raises(DomainError):
        alpha_beta_product(t_dip)


@pytest.mark.parametrize("flux, expected", [(1.8, 1.0), (0.0, 0.0), (3.6, 2.0)])
def test_saturation_parameter(flux, expected):
    assert saturation_parameter(flux, 1.8) == pytest.approx(expected)
    assert photon_flux_for_saturation(expected, 1.8) == pytest.approx(flux)


def test_saturation_parameter_needs_positive_n_crit():
    with pytest.raises(DomainError, match="n_crit"):
        saturation_parameter(1.0, 0.0)


def test_length_to_detuning_reference():
    resonance = 382.25e12
    fsr = SPEED_OF_LIGHT / (2.0 * 1.53e-6)
    cavity = CavityParams(kappa_fwhm=250e9, finesse=fsr / 250e9, resonance_freq=resonance)
    assert cavity.effective_length == pytest.approx(1.53e-6)
    assert length_to_detuning(1e-9, cavity) == pytest.approx(250e9, rel=1e-2)
    assert detuning_to_length(length_to_detuning(1e-9, cavity), cavity) == pytest.approx(1e-9)


def test_consistency_report_keeps_both_dips(paper_system):
    report = consistency_report(paper_system)
    assert report.cooperativity == pytest.approx(0.219, abs=1e-3)
    assert report.beta_alpha == pytest.approx(0.2126, abs=1e-4)
    assert report.linear_dip == pytest.approx(0.327, abs=1e-3)
    assert report.eq1_dip == pytest.approx(0.380, abs=1e-3)
    assert not math.isclose(report.linear_dip, report.eq1_dip, abs_tol=0.02)
    assert report.relative_gap > 0
