"""Pumped-molecule CW gain, Bloch integration, pulsed response and IRF convolution."""

import math

import numpy as np
import pytest

from molcav.errors import DomainError
from molcav.fitting.fits import fit_decay_with_irf
from molcav.physics.dynamics import (
    PulseConfig,
    amplification_curve,
    default_time_grid,
    dephasing_for_peak_gain,
    first_zero_crossing,
    max_gain_percent,
    peak_gain_pump_rate,
    probe_transmission_with_pump,
    pulsed_response,
    steady_state,
    stimulated_difference,
)
from molcav.physics.dynamics_helpers.bloch import (
    BlochState,
    bloch_steady_state,
    integrate_bloch,
)
from molcav.physics.dynamics_helpers.photon_stats import (
    g2_background,
    g2_trace,
    g2_weak_drive,
    signal_fraction_from_g2,
)
from molcav.physics.dynamics_helpers.irf import (
    InstrumentResponse,
    convolve_piecewise_linear,
    convolve_sampled,
    emg,
)
from molcav.models.trace import Trace


@pytest.fixture
def gamma(paper_system):
    return paper_system.emitter.gamma_fwhm


# =============================================================================
# CW pumping
# =============================================================================

def test_unpumped_transmission_shows_eq1_dip(paper_system):
    trace = probe_transmission_with_pump([0.0, 1e9], 0.0, paper_system)
    assert trace.y[0] == pytest.approx(0.620, abs=1e-3)
    assert trace.y[0] == pytest.approx((1.0 - paper_system.beta_alpha) ** 2, abs=1e-12)
    assert trace.y[1] == pytest.approx(1.0, abs=1e-3)


def test_transparency_at_pump_equal_gamma(paper_system, gamma):
    trace = probe_transmission_with_pump(np.linspace(-200e6, 200e6, 401), gamma, paper_system)
    assert np.max(np.abs(trace.y - 1.0)) <= 1e-9


def test_gain_above_transparency(paper_system, gamma):
    trace = probe_transmission_with_pump([0.0], 3.0 * gamma, paper_system)
    assert trace.y[0] - 1.0 == pytest.approx(0.054, abs=1e-3)


def test_peak_gain_without_dephasing(paper_system, gamma):
    assert peak_gain_pump_rate(gamma) == pytest.approx(3.0 * gamma)
    assert max_gain_percent(paper_system) == pytest.approx(5.4, abs=0.1)


def test_dephasing_caps_peak_gain(paper_system):
    gamma_star = dephasing_for_peak_gain(2.0, paper_system)
    assert gamma_star > 0
    dephased = paper_system.with_pure_dephasing(gamma_star)
    assert max_gain_percent(dephased) == pytest.approx(2.0, abs=1e-6)


def test_unreachable_gain_target(paper_system):
    with pytest.raises(DomainError, match="reachable"):
        dephasing_for_peak_gain(10.0, paper_system)


def test_amplification_curve_shape(paper_system, gamma):
    dephased = paper_system.with_pure_dephasing(dephasing_for_peak_gain(2.0, paper_system))
    curve = amplification_curve(np.linspace(0.0, 20.0 * gamma, 401), dephased)
    peak = int(np.argmax(curve.y))
    assert curve.y[0] < 0
    assert 0 < peak < len(curve) - 1
    assert curve.y[-1] < curve.y[peak]
    assert curve.y[peak] == pytest.approx(2.0, abs=0.1)


def test_undephased_gain_changes_sign_once(paper_system, gamma):
    clean = paper_system.with_pure_dephasing(0.0)
    curve = amplification_curve(np.linspace(0.0, 20.0 * gamma, 401)[1:], clean)
    assert np.count_nonzero(np.diff(np.signbit(curve.y))) == 1
    assert first_zero_crossing(curve, falling=False) == pytest.approx(gamma, rel=1e-3)


def test_negative_pump_rejected(paper_system):
    with pytest.raises(DomainError):
        amplification_curve([-1.0, 0.0], paper_system)
    with pytest.raises(DomainError):
        probe_transmission_with_pump([0.0], -1.0, paper_system)


# =============================================================================
# Bloch equations
# =============================================================================

def test_free_decay_matches_exponential(paper_system):
    emitter = paper_system.emitter
    times = np.linspace(0.0, 5.0 * emitter.lifetime, 501)
    traj = integrate_bloch(BlochState.after_pulse(1.0), times, emitter)
    np.testing.assert_allclose(traj.rho_ee, np.exp(-times / emitter.lifetime), rtol=0, atol=1e-8)
    np.testing.assert_allclose(traj.rho_ee + traj.rho_gg, 1.0, rtol=0, atol=1e-12)
    assert traj.error_estimate < 1e-9


def test_integration_reaches_analytic_steady_state(paper_system, gamma):
    emitter = paper_system.emitter
    times = np.linspace(0.0, 30.0 * emitter.lifetime, 301)
    traj = integrate_bloch(BlochState.ground(), times, emitter,
                           pump_rate=gamma, probe_rabi=gamma, probe_detuning=10e6)
    expected = bloch_steady_state(gamma, gamma, 10e6, emitter)
    final = traj.final
    assert final.rho_ee == pytest.approx(expected.rho_ee, abs=1e-6)
    assert final.coherence.real == pytest.approx(expected.coherence.real, abs=1e-6)
    assert final.coherence.imag == pytest.approx(expected.coherence.imag, abs=1e-6)


@pytest.mark.parametrize("seed", range(20))
def test_long_integration_matches_steady_state_for_random_drives(paper_system, gamma, seed):
    rng = np.random.default_rng(seed)
    emitter = paper_system.with_pure_dephasing(rng.uniform(0.0, 3.0) * gamma).emitter
    pump = rng.uniform(0.0, 5.0) * gamma
    rabi = rng.uniform(0.0, 3.0) * gamma
    detuning = rng.uniform(-5.0, 5.0) * gamma
    times = np.linspace(0.0, 50.0 * emitter.lifetime, 51)
    traj = integrate_bloch(BlochState.ground(), times, emitter,
                           pump_rate=pump, probe_rabi=rabi, probe_detuning=detuning)
    expected = bloch_steady_state(pump, rabi, detuning, emitter)
    final = [traj.rho_ee[-1], traj.rho_gg[-1], traj.coherence[-1].real, traj.coherence[-1].imag]
    oracle = [expected.rho_ee, expected.rho_gg, expected.coherence.real, expected.coherence.imag]
    np.testing.assert_allclose(final, oracle, rtol=1e-8, atol=1e-10)


def test_population_is_conserved_over_many_steps(paper_system, gamma):
    emitter = paper_system.emitter
    step = emitter.lifetime / 100.0
    times = step * np.arange(10001)
    traj = integrate_bloch(BlochState.after_pulse(0.3), times, emitter, pump_rate=2.0 * gamma,
                           probe_rabi=gamma, probe_detuning=0.5 * gamma, step=step)
    assert np.max(np.abs(traj.rho_ee + traj.rho_gg - 1.0)) <= 1e-9


def test_weak_drive_steady_state(paper_system, gamma):
    state = steady_state(3.0 * gamma, paper_system)
    assert state.rho_ee == pytest.approx(0.75)
    assert state.inversion == pytest.approx(0.5)


@pytest.mark.parametrize("kwargs", [
    {"rho_ee": 1.2, "rho_gg": 0.0},
    {"rho_ee": 0.7, "rho_gg": 0.7},
    {"rho_ee": 0.5, "rho_gg": 0.5, "coherence": 0.8 + 0j},
])
def test_invalid_bloch_state(kwargs):
    with pytest.raises(DomainError):
        BlochState(**kwargs)


def test_integration_times_must_increase(paper_system):
    with pytest.raises(DomainError):
        integrate_bloch(BlochState.ground(), [0.0, 0.0], paper_system.emitter)


# =============================================================================
# Instrument response
# =============================================================================

def test_exponential_convolution_matches_closed_form(paper_system):
    tau = paper_system.emitter.lifetime
    irf = InstrumentResponse(0.5e-9)
    t = 5e-12 * np.arange(6001)
    knots = np.concatenate([[-5e-9, 0.0], t])
    values = np.concatenate([[0.0, 0.0], np.exp(-t / tau)])
    out_times = np.linspace(-2e-9, 20e-9, 2201)
    convolved = convolve_piecewise_linear(knots, values, irf, out_times)
    oracle = emg(out_times, 1.0, tau, irf.sigma, 0.0)
    assert np.max(np.abs(convolved - oracle)) <= 1e-6


def test_sampled_convolution_agrees_on_smooth_signal():
    irf = InstrumentResponse(0.5e-9)
    dt = 5e-12
    t = dt * np.arange(4001)
    values = np.sin(2.0 * math.pi * t / 10e-9)
    exact = convolve_piecewise_linear(t, values, irf, t)
    sampled = convolve_sampled(values, dt, irf)
    inner = slice(500, 3500)
    np.testing.assert_allclose(sampled[inner], exact[inner], rtol=0, atol=1e-5)


def _random_signal(seed):
    rng = np.random.default_rng(seed)
    knots = np.linspace(-5e-9, 15e-9, 201)
    knots = np.concatenate([knots[:100], [knots[100]], knots[100:]])
    return knots, rng.standard_normal(knots.size)


def test_convolution_is_linear():
    irf = InstrumentResponse(0.5e-9)
    knots, first = _random_signal(1)
    _, second = _random_signal(2)
    out_times = np.linspace(-8e-9, 18e-9, 521)
    combined = convolve_piecewise_linear(knots, 2.5 * first - 0.7 * second, irf, out_times)
    separate = (2.5 * convolve_piecewise_linear(knots, first, irf, out_times)
                - 0.7 * convolve_piecewise_linear(knots, second, irf, out_times))
    np.testing.assert_allclose(combined, separate, rtol=0, atol=1e-12)


def test_convolution_commutes_with_time_shifts():
    irf = InstrumentResponse(0.5e-9)
    knots, values = _random_signal(3)
    out_times = np.linspace(-8e-9, 18e-9, 521)
    shift = 3.75e-9
    base = convolve_piecewise_linear(knots, values, irf, out_times)
    shifted = convolve_piecewise_linear(knots + shift, values, irf, out_times + shift)
    np.testing.assert_allclose(shifted, base, rtol=0, atol=1e-10)


def test_kernel_is_normalized():
    kernel = InstrumentResponse(0.5e-9).kernel(5e-12)
    assert kernel.sum() == pytest.approx(1.0)
    assert kernel.size % 2 == 1


def test_emg_is_stable_far_from_onset():
    y = emg(np.array([-5e-9, 0.0, 50e-9]), 1.0, 3e-9, 1e-12)
    assert np.all(np.isfinite(y))
    assert y[-1] == pytest.approx(math.exp(-50.0 / 3.0), rel=1e-6)


# =============================================================================
# Pulsed response
# =============================================================================

def test_default_grid_covers_the_decay(paper_system):
    tau = paper_system.emitter.lifetime
    grid = default_time_grid(tau)
    assert grid[0] < 0 < grid[-1]
    assert grid[-1] >= 5.0 * tau
    assert np.diff(grid) == pytest.approx(5e-12)


def test_pulsed_decay_fit_recovers_lifetime(paper_system, paper_params):
    tau = paper_system.emitter.lifetime
    grid = default_time_grid(tau)
    irf = paper_params.irf()
    pulse = PulseConfig()

    ideal = pulsed_response(pulse, False, paper_system, None, grid)
    assert fit_decay_with_irf(ideal, None, t0=0.0).value("tau") == pytest.approx(tau, rel=0.01)

    seen = pulsed_response(pulse, False, paper_system, irf, grid)
    fit = fit_decay_with_irf(seen, irf, t0=0.0)
    assert fit.value("tau") == pytest.approx(tau, rel=0.01)
    assert fit.converged


def test_pulsed_grid_must_cover_five_lifetimes(paper_system):
    short = np.linspace(-1e-9, 2e-9, 301)
    with pytest.raises(DomainError, match="lifetimes"):
        pulsed_response(PulseConfig(), False, paper_system, None, short)


def test_cw_beam_adds_transmitted_background(paper_system):
    grid = default_time_grid(paper_system.emitter.lifetime)
    off = pulsed_response(PulseConfig(), False, paper_system, None, grid)
    on = pulsed_response(PulseConfig(), True, paper_system, None, grid, probe_detuning=10e9)
    assert np.all(on.y > off.y)


def test_stimulated_zero_crossing_at_tau_ln2(paper_system):
    tau = paper_system.emitter.lifetime
    grid = default_time_grid(tau)
    diff = stimulated_difference(PulseConfig(), paper_system, None, grid)
    crossing = first_zero_crossing(diff, start=0.0)
    assert crossing == pytest.approx(tau * math.log(2.0), abs=5e-12)


def test_irf_delays_the_zero_crossing_like_brute_force(paper_system, paper_params):
    tau = paper_system.emitter.lifetime
    grid = default_time_grid(tau)
    irf = paper_params.irf()
    ideal = stimulated_difference(PulseConfig(), paper_system, None, grid)
    smoothed = stimulated_difference(PulseConfig(), paper_system, irf, grid)
    brute = ideal.with_y(convolve_sampled(ideal.y, ideal.step, irf))

    ideal_t = first_zero_crossing(ideal, start=0.0)
    smoothed_t = first_zero_crossing(smoothed, start=0.0)
    assert smoothed_t > ideal_t
    assert smoothed_t == pytest.approx(first_zero_crossing(brute, start=0.0), abs=5e-12)


def test_missing_zero_crossing():
    trace = Trace([0.0, 1.0, 2.0], [1.0, 2.0, 3.0])
    with pytest.raises(DomainError, match="zero crossing"):
        first_zero_crossing(trace)


def test_pulse_population_range():
    with pytest.raises(DomainError):
        PulseConfig(initial_excited_population=1.5)


# =============================================================================
# Photon statistics
# =============================================================================

def test_background_raises_g2_zero():
    assert g2_background(0.98, 0.0) == pytest.approx(0.0396)
    assert signal_fraction_from_g2(0.0396) == pytest.approx(0.98)
    assert g2_background(1.0, 0.0) == 0.0


def test_ideal_antibunching_shape(gamma):
    g2 = g2_weak_drive(np.linspace(0.0, 5.0 / gamma, 201), gamma)
    assert g2[0] == 0.0
    assert np.all(np.diff(g2) > 0)
    assert g2_weak_drive(20.0 / gamma, gamma) == pytest.approx(1.0, abs=1e-12)


def test_signed_delay_trace_is_even(gamma):
    delays = np.linspace(-100e-9, 100e-9, 401)
    trace = g2_trace(delays, gamma, 0.98)
    np.testing.assert_allclose(trace.y, trace.y[::-1], rtol=0, atol=1e-12)
    assert trace.y[200] == pytest.approx(0.0396)


def test_photon_stats_domain(gamma):
    with pytest.raises(DomainError, match="tau"):
        g2_weak_drive(-1e-9, gamma)
    with pytest.raises(DomainError, match="not antibunched"):
        signal_fraction_from_g2(1.2)
    with pytest.raises(DomainError, match="signal_fraction"):
        g2_background(1.5, 0.0)
