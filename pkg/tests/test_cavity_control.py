"""Cross-polarized detection, Hansch-Couillaud error signal, lock loop and length modulation."""

import math
from dataclasses import replace

import numpy as np
import pytest

from molcav.errors import DomainError, StabilityError
from molcav.models.trace import Trace
from molcav.physics.cavity_control import (
    birefringent_responses,
    calibrate_lock_noise,
    cross_polarized_throughput,
    flank_center,
    harmonic_levels,
    harmonic_spectrum,
    hc_error_signal,
    hc_error_signal_jones,
    hc_slope,
    lock_simulate,
    lock_stability_margin,
    modulated_emission,
)
from molcav.physics.control_helpers.lock_loop import (
    LockConfig,
    check_stability,
    closed_loop_variance,
)
from molcav.physics.control_helpers.modulation import ModulationConfig, nearest_bin
from molcav.physics.parameter_algebra import length_to_detuning
from molcav.physics.spectra import bare_cavity_transmission


@pytest.fixture
def cavity(paper_system):
    return paper_system.cavity


# =============================================================================
# Cross-polarized detection
# =============================================================================

def test_half_of_the_cavity_field_passes_the_analyzer():
    assert cross_polarized_throughput(-45.0, 45.0, 90.0, 1.0, 0.0) == pytest.approx(0.5)


def test_axis_misalignment_barely_matters(cavity):
    r_a, r_b = birefringent_responses(0.0, cavity)
    square = cross_polarized_throughput(-45.0, 45.0, 90.0, r_a, r_b)
    measured = cross_polarized_throughput(-45.0, 45.0, cavity.axis_angle_deg, r_a, r_b)
    assert cavity.axis_angle_deg == pytest.approx(93.0)
    assert measured == pytest.approx(square, rel=0.01)


def test_crossed_polarizers_block_isotropic_cavity():
    assert cross_polarized_throughput(45.0, 135.0, 90.0, 1.0, 1.0) == pytest.approx(0.0, abs=1e-12)


def test_half_wave_retardance_rotates_into_analyzer():
    assert cross_polarized_throughput(45.0, 135.0, 90.0, 1.0, -1.0) == pytest.approx(1.0)


def test_vanishing_output_passes_nothing():
    assert cross_polarized_throughput(45.0, 135.0, 93.0, 0.0, 0.0) == 0.0


def test_lossy_cavity_normalization():
    assert cross_polarized_throughput(45.0, 45.0, 90.0, 0.5, 0.5) == pytest.approx(1.0)
    assert cross_polarized_throughput(45.0, 45.0, 90.0, 0.5, 0.5, relative_to_input=True) == pytest.approx(0.25)
    assert cross_polarized_throughput(-45.0, 45.0, 90.0, 1.0, 0.0, relative_to_input=True) == pytest.approx(0.25)


def test_non_finite_angle_rejected():
    with pytest.raises(DomainError, match="analyzer angle"):
        cross_polarized_throughput(0.0, math.nan, 93.0, 1.0, 1.0)


def test_birefringent_modes(cavity):
    r_a, r_b = birefringent_responses(0.0, cavity)
    assert r_b == pytest.approx(1.0)
    assert abs(r_a) < 0.1


# =============================================================================
# Hansch-Couillaud
# =============================================================================

def test_error_signal_is_odd_with_zero_on_resonance(cavity):
    d = np.linspace(0.0, 1e12, 101)
    np.testing.assert_allclose(hc_error_signal(d, cavity), -hc_error_signal(-d, cavity), rtol=0, atol=1e-15)
    assert hc_error_signal(0.0, cavity) == 0.0


def test_error_signal_extrema_at_half_linewidth(cavity):
    kappa = cavity.kappa_fwhm
    d = np.linspace(-2.0 * kappa, 2.0 * kappa, 4001)
    e = hc_error_signal(d, cavity)
    assert d[np.argmin(e)] == pytest.approx(0.5 * kappa)
    assert d[np.argmax(e)] == pytest.approx(-0.5 * kappa)
    assert hc_error_signal(0.5 * kappa, cavity, coupling_efficiency=0.8) == pytest.approx(-0.8)


def test_jones_model_scales_with_polarizer(cavity):
    d = np.linspace(-500e9, 500e9, 51)
    jones = hc_error_signal_jones(d, cavity, polarizer_deg=20.0)
    expected = math.sin(math.radians(40.0)) * hc_error_signal(d, cavity)
    np.testing.assert_allclose(jones, expected, rtol=0, atol=1e-12)


@pytest.mark.parametrize("angle", [0.0, 90.0])
def test_polarizer_on_axis_rejected(cavity, angle):
    with pytest.raises(DomainError, match="no Hansch-Couillaud signal"):
        hc_error_signal_jones(0.0, cavity, polarizer_deg=angle)


def test_slope_matches_finite_difference(cavity):
    dx = 1e-17
    numeric = hc_error_signal(length_to_detuning(dx, cavity), cavity) / dx
    assert numeric == pytest.approx(hc_slope(cavity), rel=1e-6)


@pytest.mark.parametrize("eta", [0.0, 1.5])
def test_coupling_efficiency_range(cavity, eta):
    with pytest.raises(DomainError, match="coupling_efficiency"):
        hc_error_signal(0.0, cavity, coupling_efficiency=eta)


# =============================================================================
# Lock loop
# =============================================================================

def test_closed_loop_variance_of_integral_lock():
    assert closed_loop_variance(0.0, 0.5, 1.0) == pytest.approx(4.0 / 3.0)
    assert lock_stability_margin(0.0, 0.5) == pytest.approx(0.5)


@pytest.mark.parametrize("kp, ki, bound", [
    (0.0, 2.5, "Ki \\+ 2 Kp < 2"),
    (0.0, 0.0, "Ki > 0"),
    (1.2, 0.1, "\\|Kp\\| < 1"),
])
def test_unstable_gains_named(kp, ki, bound):
    with pytest.raises(StabilityError, match=bound):
        check_stability(kp, ki)


def test_simulation_refuses_unstable_loop(cavity):
    with pytest.raises(StabilityError):
        lock_simulate(LockConfig(ki=2.5), cavity, duration=0.01)


def test_noiseless_lock_stays_on_resonance(cavity):
    run = lock_simulate(LockConfig(noise_sigma=0.0), cavity, duration=0.1)
    assert run.rms == 0.0
    assert run.residual.tags["loop"] == "closed"
    assert len(run.residual) == 1000


def test_paper_lock_reaches_target_rms(paper_params, cavity):
    config = paper_params.lock_config(seed=0)
    run = lock_simulate(config, cavity, paper_params.lock_duration())
    assert run.rms == pytest.approx(0.1e-9, abs=0.02e-9)


def test_open_loop_drifts_away(paper_params, cavity):
    duration = paper_params.lock_duration()
    closed = lock_simulate(paper_params.lock_config(seed=0), cavity, duration)
    opened = lock_simulate(paper_params.lock_config(seed=0, closed_loop=False), cavity, duration)
    assert opened.rms >= 10.0 * closed.rms


def test_noise_calibration_hits_target(paper_params, cavity):
    config = paper_params.lock_config(seed=1)
    sigma = calibrate_lock_noise(0.1e-9, config, cavity, 0.5)
    run = lock_simulate(replace(config, noise_sigma=sigma), cavity, 0.5)
    assert run.rms == pytest.approx(0.1e-9, abs=0.02e-9)
    assert sigma == pytest.approx(0.0866e-9, rel=0.2)


def _integral_lock_rms(paper_params, cavity, ki):
    config = replace(paper_params.lock_config(seed=0), kp=0.0, ki=ki)
    return lock_simulate(config, cavity, paper_params.lock_duration()).rms


def test_lock_rms_falls_with_integral_gain_up_to_one(paper_params, cavity):
    rms = [_integral_lock_rms(paper_params, cavity, ki) for ki in (0.1, 0.3, 0.5, 0.7, 1.0)]
    assert np.all(np.diff(rms) <= 0.0)
    assert rms[0] > 2.0 * rms[-1]


def test_lock_rms_rises_towards_the_stability_boundary(paper_params, cavity):
    rms = [_integral_lock_rms(paper_params, cavity, ki) for ki in (1.0, 1.3, 1.6, 1.9)]
    assert np.all(np.diff(rms) > 0.0)


def test_open_loop_rms_grows_with_duration(paper_params, cavity):
    for seed in range(5):
        config = paper_params.lock_config(seed=seed, closed_loop=False)
        short = lock_simulate(config, cavity, 0.001).rms
        long = lock_simulate(config, cavity, 1.0).rms
        assert long > 3.0 * short


# =============================================================================
# Length modulation
# =============================================================================

@pytest.mark.parametrize("flank, level", [("half_max", 0.5), ("max_slope", 0.75), ("peak", 1.0)])
def test_flank_points(cavity, flank, level):
    x0 = flank_center(cavity, flank)
    assert bare_cavity_transmission(length_to_detuning(x0, cavity), cavity) == pytest.approx(level)


def test_unknown_flank(cavity):
    with pytest.raises(ValueError, match="Unknown flank point: side"):
        flank_center(cavity, "side")


def test_zero_amplitude_gives_constant_emission(cavity):
    mod = ModulationConfig.for_cycles(flank_center(cavity), 0.0, 10.0)
    trace = modulated_emission(mod, cavity)
    assert np.ptp(trace.y) == 0.0
    assert trace.y[0] == pytest.approx(0.5)


def test_harmonics_fall_off_on_the_flank(degraded_params):
    cavity = degraded_params.system.cavity
    mod = degraded_params.modulation_config()
    trace = modulated_emission(mod, cavity)
    levels = harmonic_levels(harmonic_spectrum(trace, mod.frequency), mod.frequency)
    assert levels[1] == pytest.approx(0.0)
    assert levels[3] < levels[2] < 0.0


def test_peak_modulation_doubles_the_frequency(degraded_params):
    cavity = degraded_params.system.cavity
    mod = ModulationConfig.for_cycles(flank_center(cavity, "peak"), 1.5e-9, 10.0)
    spectrum = harmonic_spectrum(modulated_emission(mod, cavity))
    power = spectrum.y
    first = power[nearest_bin(spectrum.x, 10.0)]
    second = power[nearest_bin(spectrum.x, 20.0)]
    assert second > 0
    assert first <= 1e-4 * second


def test_spectrum_power_sums_to_variance(degraded_params):
    mod = degraded_params.modulation_config()
    trace = modulated_emission(mod, degraded_params.system.cavity)
    spectrum = harmonic_spectrum(trace, mod.frequency)
    assert spectrum.y.sum() == pytest.approx(np.var(trace.y), rel=1e-9)
    assert "level_db" in spectrum.columns


def test_spectrum_needs_uniform_sampling():
    trace = Trace([0.0, 1.0, 3.0, 4.0], [0.0, 1.0, 0.0, 1.0])
    with pytest.raises(DomainError, match="uniformly sampled"):
        harmonic_spectrum(trace)


@pytest.mark.parametrize("kwargs, match", [
    ({"sample_rate": 15.0}, "twice the modulation"),
    ({"duration": 0.5}, "need >= 10"),
    ({"amplitude": -1e-9}, "amplitude"),
])
def test_modulation_config_invariants(kwargs, match):
    base = {"center": 0.0, "amplitude": 1.5e-9, "frequency": 10.0, "duration": 1.0, "sample_rate": 1e3}
    base.update(kwargs)
    with pytest.raises(DomainError, match=match):
        ModulationConfig(**base)


def test_third_harmonic_grows_with_amplitude(degraded_params):
    cavity = degraded_params.system.cavity
    mod = degraded_params.modulation_config()
    wide = replace(mod, amplitude=2.0 * mod.amplitude)
    small = harmonic_levels(harmonic_spectrum(modulated_emission(mod, cavity), mod.frequency), mod.frequency)
    large = harmonic_levels(harmonic_spectrum(modulated_emission(wide, cavity), mod.frequency), mod.frequency)
    assert large[3] > small[3] + 10.0


def test_pure_sinusoid_has_no_other_lines():
    t = np.arange(1000) / 1000.0
    trace = Trace(t, np.sin(2.0 * math.pi * 10.0 * t), x_label="time", x_unit="s")
    spectrum = harmonic_spectrum(trace, 10.0)
    levels = spectrum.columns["level_db"][0]
    fundamental = nearest_bin(spectrum.x, 10.0)
    assert levels[fundamental] == pytest.approx(0.0)
    others = np.delete(levels, [0, fundamental])
    assert np.all(others < -120.0)
