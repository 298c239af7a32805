"""Parameter files: unit suffixes, validation, preset inheritance and derived configs."""

import json

import pytest

from molcav.errors import ConfigValidationError
from molcav.models.preset_registry import get_registry
from molcav.models.parameter_file import (
    load_parameter_file,
    split_key,
    validate_parameter_file,
)

MINIMAL = {
    "kappa_fwhm_ghz": 250.0,
    "finesse": 200.0,
    "resonance_wavelength_nm": 784.3,
    "gamma_fwhm_mhz": 40.0,
    "g_mhz": 740.0,
}


def _with(**changes):
    data = dict(MINIMAL)
    data.update(changes)
    return data


@pytest.mark.parametrize("key, expected", [
    ("kappa_fwhm_ghz", ("kappa_fwhm", "ghz")),
    ("lock_drift_nm_per_s", ("lock_drift", "nm_per_s")),
    ("finesse", ("finesse", "")),
    ("cavity_detuning_kappa", ("cavity_detuning", "kappa")),
    ("colour_of_mirror", None),
])
def test_split_key(key, expected):
    assert split_key(key) == expected


@pytest.mark.parametrize("name", ["paper_params", "paper_params_degraded"])
def test_bundled_presets_are_valid(name):
    assert validate_parameter_file(get_registry().path(name)) == []


def test_paper_preset_values(paper_params):
    system = paper_params.system
    assert system.cavity.kappa_fwhm == pytest.approx(250e9)
    assert system.cooperativity == pytest.approx(0.21904, abs=1e-5)
    assert system.zpl_enhancement == pytest.approx(1.6629, abs=1e-4)
    assert system.emitter.branching_alpha == pytest.approx(0.45026, abs=1e-5)
    assert system.coupling.beta == pytest.approx(0.47217, abs=1e-5)
    assert system.drive.saturation == pytest.approx(1.0)
    assert paper_params.seed == 0


def test_degraded_preset_inherits(degraded_params, paper_params):
    system = degraded_params.system
    assert degraded_params.preset == "paper_params"
    assert system.cavity.kappa_fwhm == pytest.approx(500e9)
    assert system.cavity.fsr == pytest.approx(paper_params.system.cavity.fsr)
    assert system.emitter.branching_alpha == pytest.approx(paper_params.system.emitter.branching_alpha)
    assert system.cooperativity == pytest.approx(0.5 * paper_params.system.cooperativity)


def test_minimal_file_loads():
    params = load_parameter_file(MINIMAL)
    assert params.system.emitter.branching_alpha == 1.0
    assert params.system.coupling.beta == 0.0
    assert params.get("lock_ki") is None


def test_units_are_converted_to_si():
    params = load_parameter_file(_with(pure_dephasing_khz=500.0, lock_noise_sigma_nm=0.1))
    assert params.values["pure_dephasing"] == pytest.approx(5e5)
    assert params.values["lock_noise_sigma"] == pytest.approx(1e-10)
    assert params.keys["kappa_fwhm"] == "kappa_fwhm_ghz"


def test_cavity_detuning_in_kappa_units():
    params = load_parameter_file(_with(cavity_detuning_kappa=0.5))
    assert params.system.drive.cavity_detuning == pytest.approx(125e9)
    assert params.system.emitter.zpl_freq == pytest.approx(params.system.cavity.resonance_freq - 125e9)


def test_negative_linewidth_names_the_key():
    violations = validate_parameter_file(_with(kappa_fwhm_ghz=-1.0))
    assert len(violations) == 1
    assert violations[0].startswith("kappa_fwhm_ghz")
    assert "> 0" in violations[0]


def test_missing_suffix_names_the_key():
    data = dict(MINIMAL)
    data["kappa_fwhm"] = data.pop("kappa_fwhm_ghz")
    violations = validate_parameter_file(data)
    assert any(v.startswith("kappa_fwhm:") and "unit suffix" in v for v in violations)


def test_unknown_suffix_and_key():
    violations = validate_parameter_file(_with(gamma_fwhm_parsec=1.0, colour_of_mirror="gold"))
    assert any("unknown unit suffix _parsec" in v for v in violations)
    assert any(v == "colour_of_mirror: unknown key" for v in violations)


def test_every_violation_is_reported():
    with pytest.raises(ConfigValidationError) as info:
        load_parameter_file(_with(kappa_fwhm_ghz=-1.0, finesse=True, ensemble_size=2.5,
                                  modulation_flank="side"))
    violations = info.value.violations
    assert len(violations) == 4
    assert any("expected a number" in v for v in violations)
    assert any("expected an integer" in v for v in violations)
    assert any("must be one of" in v for v in violations)


def test_missing_required_keys():
    violations = validate_parameter_file({})
    assert len(violations) == len(["kappa", "finesse", "resonance", "linewidth", "g"])
    assert all(v.startswith("missing required key") for v in violations)


def test_alternative_keys_are_exclusive():
    violations = validate_parameter_file(_with(lifetime_ns=4.0))
    assert any("not both" in v for v in violations)


def test_override_replaces_alternative_from_preset():
    params = load_parameter_file({"preset": "paper_params", "lifetime_ns": 4.0})
    assert "gamma_fwhm" not in params.values
    assert params.system.emitter.lifetime == pytest.approx(4e-9)


def test_override_with_other_suffix():
    params = load_parameter_file({"preset": "paper_params", "kappa_fwhm_thz": 0.3})
    assert params.system.cavity.kappa_fwhm == pytest.approx(300e9)
    assert "kappa_fwhm_ghz" not in params.raw


def test_unknown_preset():
    violations = validate_parameter_file({"preset": "no_such_preset"})
    assert any("no bundled parameter file named 'no_such_preset'" in v for v in violations)


def test_joint_invariant_violation():
    violations = validate_parameter_file(_with(tau_ref_ns=3.9, tau_cav_ns=10.0, branching_alpha_ref=0.33))
    assert len(violations) == 1
    assert violations[0].startswith("invariant:")


def test_group_invariants_are_checked():
    violations = validate_parameter_file(_with(
        modulation_amplitude_nm=1.5,
        modulation_frequency_hz=10.0,
        modulation_sample_rate_hz=15.0,
    ))
    assert any(v.startswith("modulation parameters:") for v in violations)


def test_file_not_found(tmp_path):
    violations = validate_parameter_file(tmp_path / "missing.json")
    assert violations == [f"{tmp_path / 'missing.json'}: file not found"]


def test_malformed_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{ not json", encoding="utf-8")
    violations = validate_parameter_file(path)
    assert len(violations) == 1
    assert "not a valid parameter file" in violations[0]


def test_load_from_path(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"preset": "paper", "seed": 7, "finesse": 100.0, "kappa_fwhm_ghz": 500.0}))
    params = load_parameter_file(path)
    assert params.seed == 7
    assert params.source == str(path)
    assert params.system.cavity.kappa_fwhm == pytest.approx(500e9)


def test_flattened_round_trip(degraded_params):
    again = load_parameter_file(degraded_params.flattened())
    assert dict(again.values) == dict(degraded_params.values)
    assert again.seed == degraded_params.seed
    assert again.system.cooperativity == degraded_params.system.cooperativity


def test_derived_configurations(paper_params):
    lock = paper_params.lock_config(seed=3)
    assert lock.ki == 0.5
    assert lock.noise_sigma == pytest.approx(0.0866e-9)
    assert lock.seed == 3

    mod = paper_params.modulation_config()
    assert mod.frequency == 10.0
    assert mod.sample_rate == pytest.approx(1e3)
    assert mod.duration == pytest.approx(1.0)
    assert mod.amplitude == pytest.approx(1.5e-9)

    fast = paper_params.modulation_config(frequency=114e3)
    assert fast.sample_rate == pytest.approx(100 * 114e3)

    assert paper_params.irf().fwhm == pytest.approx(0.5e-9)
    assert len(paper_params.ensemble(seed=0)) == 200
