"""Model families, the Levenberg-Marquardt optimizer and fit front ends."""

import numpy as np
import pytest

from molcav.errors import DomainError
from molcav.fitting.fits import envelope_window, evaluate, fit, fit_decay_with_irf, fit_family
from molcav.fitting.model_families import get_all_families, get_family
from molcav.fitting.optimizer import finite_difference_jacobian, levenberg_marquardt
from molcav.models.trace import Trace
from molcav.physics.dynamics_helpers.irf import FWHM_PER_SIGMA, InstrumentResponse

GAMMA = 40e6
BETA_ALPHA = 0.2126


def _trace(model, x, values, constants=None, **kwargs):
    return Trace(x, evaluate(model, x, values, constants), **kwargs)


# =============================================================================
# Noiseless recovery
# =============================================================================

@pytest.mark.parametrize("family, values", [
    ("lorentzian", [0.7, 2.3, -0.4, 1.0]),
    ("gaussian", [-1.2, 3.1, 2.5, 0.3]),
])
def test_peak_families_recover_parameters(family, values):
    data = _trace(family, np.linspace(-10.0, 10.0, 201), values)
    result = fit_family(family, data)
    assert result.converged
    np.testing.assert_allclose(result.values, values, rtol=1e-6, atol=1e-9)


def test_exponential_recovery():
    values = [2.0, 3.0, 0.1]
    data = _trace("exponential", np.linspace(-1.0, 20.0, 421), values, {"t0": 0.0})
    result = fit_family("exponential", data, {"t0": 0.0})
    np.testing.assert_allclose(result.values, values, rtol=1e-6)


def test_exponential_with_irf_recovery():
    values = [1.5, 4.0, 0.05]
    consts = {"t0": 0.0, "sigma": 0.2}
    data = _trace("exp_irf", np.linspace(-2.0, 30.0, 641), values, consts)
    result = fit_family("exp_irf", data, consts)
    assert result.value("tau") == pytest.approx(4.0, rel=1e-4)
    assert result.value("amplitude") == pytest.approx(1.5, rel=1e-4)


def test_saturation_recovers_critical_flux():
    data = _trace("saturation", np.linspace(0.0, 20.0, 81), [1.8, BETA_ALPHA])
    result = fit_family("saturation", data)
    assert result.value("n_crit") == pytest.approx(1.8, abs=0.05)
    assert result.value("beta_alpha") == pytest.approx(BETA_ALPHA, abs=1e-3)


def test_amplification_recovers_dephasing():
    consts = {"gamma": GAMMA, "beta_alpha": BETA_ALPHA}
    truth = [2.4e7, 4.0 * GAMMA]
    data = _trace("amplification", np.linspace(0.0, 50.0, 101), truth, consts)
    result = fit_family("amplification", data, consts)
    assert result.value("pump_scale") == pytest.approx(truth[0], rel=1e-3)
    assert result.value("pure_dephasing") == pytest.approx(truth[1], rel=1e-3)


def test_coupled_response_two_starts():
    kappa = 500e9
    consts = {"kappa": kappa}
    truth = [0.0, GAMMA, 740e6, 0.8 * kappa]
    x = np.linspace(-300e6, 300e6, 601)
    data = _trace("coupled_response", x, truth, consts)
    result = fit_family("coupled_response", data, consts)
    fitted = evaluate("coupled_response", x, result.values, consts)
    assert np.max(np.abs(fitted - data.y)) < 1e-3
    assert result.value("cavity_detuning") > 0
    assert result.value("gamma_fwhm") == pytest.approx(GAMMA, rel=0.05)


def _peak_draw(rng):
    amp = rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 3.0)
    truth = [rng.uniform(-2.0, 2.0), rng.uniform(1.5, 3.0), amp, rng.uniform(-1.0, 1.0)]
    return np.linspace(-10.0, 10.0, 201), truth, {}, 1e-9


RANDOM_DRAWS = {
    "lorentzian": _peak_draw,
    "gaussian": _peak_draw,
    "exponential": lambda rng: (
        np.linspace(-1.0, 20.0, 421),
        [rng.uniform(0.5, 3.0), rng.uniform(1.0, 4.0), rng.uniform(-0.2, 0.5)],
        {"t0": 0.0}, 1e-9,
    ),
    "exp_irf": lambda rng: (
        np.linspace(-2.0, 30.0, 641),
        [rng.uniform(0.5, 3.0), rng.uniform(2.0, 5.0), rng.uniform(0.0, 0.2)],
        {"t0": 0.0, "sigma": 0.2}, 1e-9,
    ),
    "saturation": lambda rng: (
        np.linspace(0.0, 20.0, 81),
        [rng.uniform(0.5, 4.0), rng.uniform(0.1, 0.6)],
        {}, 0.0,
    ),
    "amplification": lambda rng: (
        np.linspace(0.0, 50.0, 101),
        [rng.uniform(2e7, 4e7), rng.uniform(2.0, 6.0) * GAMMA],
        {"gamma": GAMMA, "beta_alpha": BETA_ALPHA}, 0.0,
    ),
    "coupled_response": lambda rng: (
        np.linspace(-300e6, 300e6, 601),
        [rng.uniform(-30e6, 30e6), rng.uniform(30e6, 60e6), rng.uniform(400e6, 900e6),
         rng.choice([-1.0, 1.0]) * rng.uniform(0.3, 1.2) * 500e9],
        {"kappa": 500e9}, 1e-6 * GAMMA,
    ),
}


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("family", sorted(RANDOM_DRAWS))
def test_random_noiseless_draws_are_recovered(family, seed):
    x, truth, consts, atol = RANDOM_DRAWS[family](np.random.default_rng(seed))
    result = fit_family(family, _trace(family, x, truth, consts), consts)
    np.testing.assert_allclose(result.values, truth, rtol=1e-6, atol=atol)


def test_decay_guess_leaves_caller_constants_alone():
    data = _trace("exp_irf", np.linspace(-2.0, 30.0, 641), [1.5, 4.0, 0.05], {"t0": 3.0, "sigma": 0.3})
    consts = {"sigma": 0.3}
    family = get_family("exp_irf")
    family.guess(data, consts)
    model = family.build(data, consts)
    assert consts == {"sigma": 0.3}
    assert model.constants["t0"] == pytest.approx(3.0, abs=0.3)


def test_irf_decay_fit_finds_its_own_onset():
    truth = [1.5, 4.0, 0.05]
    data = _trace("exp_irf", np.linspace(-2.0, 40.0, 841), truth, {"t0": 3.0, "sigma": 0.5})
    result = fit_decay_with_irf(data, InstrumentResponse(0.5 * FWHM_PER_SIGMA))
    assert result.value("tau") == pytest.approx(4.0, rel=1e-3)
    assert result.value("amplitude") == pytest.approx(1.5, rel=1e-2)


# =============================================================================
# Optimizer
# =============================================================================

@pytest.mark.parametrize("family, values, consts", [
    ("lorentzian", [0.3, 1.7, 0.8, 0.2], {}),
    ("gaussian", [0.3, 1.7, -0.8, 0.2], {}),
    ("exponential", [1.2, 2.5, 0.1], {"t0": -1.0}),
])
def test_analytic_jacobians_match_finite_differences(family, values, consts):
    fam = get_family(family)
    x = np.linspace(-5.0, 5.0, 101)
    p = np.array(values)
    analytic = fam.jacobian(x, p, consts)
    inf = np.full(p.size, np.inf)
    numeric = finite_difference_jacobian(
        lambda xx, pp: fam.function(xx, pp, consts), x, p, -inf, inf, np.abs(p),
    )
    assert np.max(np.abs(analytic - numeric)) <= 1e-6


def test_cost_history_decreases():
    rng = np.random.default_rng(0)
    x = np.linspace(-10.0, 10.0, 201)
    y = evaluate("lorentzian", x, [0.5, 2.0, 1.0, 0.0]) + 0.01 * rng.standard_normal(x.size)
    result = fit_family("lorentzian", Trace(x, y))
    history = np.array(result.cost_history)
    assert history.size >= 2
    assert np.all(np.diff(history) < 0)
    assert result.residual_sum_squares == history[-1]
    assert result.value("fwhm") == pytest.approx(2.0, rel=0.05)
    assert 0 < result.error("fwhm") < 0.1


def test_too_few_points():
    with pytest.raises(DomainError, match="data points"):
        levenberg_marquardt(lambda x, p: p[0] * x, [1.0, 2.0], [1.0, 2.0], [1.0], [-10.0], [10.0])


def test_bounds_are_honoured():
    x = np.linspace(0.0, 1.0, 11)
    result = levenberg_marquardt(lambda xx, p: p[0] * xx, x, 3.0 * x, [0.5], [0.0], [1.0])
    assert result.value("p0") == pytest.approx(1.0)


def test_bad_sigma_rejected():
    x = np.linspace(0.0, 1.0, 11)
    with pytest.raises(DomainError, match="sigma"):
        levenberg_marquardt(lambda xx, p: p[0] * xx, x, x, [1.0], [0.0], [2.0], sigma=np.zeros(11))


def test_result_records():
    data = _trace("lorentzian", np.linspace(-10.0, 10.0, 201), [0.0, 2.0, 1.0, 0.0])
    result = fit_family("lorentzian", data)
    flat = result.as_dict(prefix="lor_")
    assert flat["lor_converged"] is True
    assert set(flat) >= {"lor_center", "lor_fwhm_stderr", "lor_rss", "lor_iterations"}
    assert result.summary_line().startswith("lorentzian: center = ")
    with pytest.raises(KeyError, match="no parameter 'tau'"):
        result.value("tau")


# =============================================================================
# Registry
# =============================================================================

def test_registry_lists_families():
    assert set(get_all_families()) == {
        "lorentzian", "gaussian", "exponential", "exp_irf",
        "saturation", "coupled_response", "amplification",
    }


def test_unknown_family():
    with pytest.raises(ValueError, match="Unknown fit model: voigt"):
        get_family("voigt")


def test_missing_constants():
    data = _trace("exponential", np.linspace(0.0, 10.0, 51), [1.0, 2.0, 0.0], {"t0": 0.0})
    with pytest.raises(DomainError, match="needs constants"):
        get_family("exp_irf").build(data)
    with pytest.raises(DomainError, match="kappa"):
        fit_family("coupled_response", data)


def test_weighted_fit_uses_sigma_column():
    x = np.linspace(-10.0, 10.0, 201)
    y = evaluate("lorentzian", x, [0.0, 2.0, 1.0, 0.0])
    weighted = Trace(x, y, columns={"sigma": (np.full(x.size, 0.5), "")})
    result = fit(get_family("lorentzian").build(weighted), weighted)
    assert result.value("fwhm") == pytest.approx(2.0, rel=1e-6)


def test_envelope_window_is_odd():
    trace = Trace(np.arange(1000) * 1e6, np.zeros(1000), tags={"line_fwhm_hz": "40000000.0"})
    assert envelope_window(trace) == 201
    assert envelope_window(trace, linewidth=1e5) == 5
    with pytest.raises(DomainError, match="linewidth"):
        envelope_window(Trace(np.arange(10.0), np.zeros(10)))


# =============================================================================
# Statistical behaviour
# =============================================================================

DIP = [0.0, 54e6, -0.38, 1.0]


def test_noiseless_dip_recovered_exactly():
    x = np.linspace(-500e6, 500e6, 1001)
    result = fit_family("lorentzian", _trace("lorentzian", x, DIP))
    assert result.value("center") == pytest.approx(0.0, abs=1e-8 * DIP[1])
    np.testing.assert_allclose(result.values[1:], DIP[1:], rtol=1e-8)


def test_noisy_dip_width_over_seeds():
    x = np.linspace(-500e6, 500e6, 1001)
    clean = evaluate("lorentzian", x, DIP)
    hits = 0
    for seed in range(20):
        rng = np.random.default_rng(seed)
        data = Trace(x, clean + 0.01 * 0.38 * rng.standard_normal(x.size))
        fwhm = fit_family("lorentzian", data).value("fwhm")
        hits += abs(fwhm / DIP[1] - 1.0) <= 0.02
    assert hits >= 18


def test_standard_error_scales_with_sample_count():
    values = [0.0, 2.0, 1.0, 0.0]
    errors = []
    for n in (401, 1601):
        x = np.linspace(-10.0, 10.0, n)
        rng = np.random.default_rng(3)
        data = Trace(x, evaluate("lorentzian", x, values) + 0.02 * rng.standard_normal(n))
        errors.append(fit_family("lorentzian", data).error("fwhm"))
    assert errors[0] / errors[1] == pytest.approx(2.0, rel=0.10)


def test_lifetimes_are_distinguished():
    t = np.linspace(0.0, 30e-9, 601)
    consts = {"t0": 0.0}
    fits = []
    for seed, tau in enumerate((3.2e-9, 3.9e-9)):
        rng = np.random.default_rng(seed)
        y = evaluate("exponential", t, [1.0, tau, 0.0], consts) + 0.01 * rng.standard_normal(t.size)
        fits.append(fit_family("exponential", Trace(t, y), consts))
    gap = fits[1].value("tau") - fits[0].value("tau")
    spread = np.hypot(fits[0].error("tau"), fits[1].error("tau"))
    assert gap > 10.0 * spread
