"""PresetRegistry name handling and cached loading."""

import pytest

from molcav.models.preset_registry import PresetName, PresetRegistry, get_registry, reset_registry


@pytest.mark.parametrize("name, expected", [
    ("paper", "paper_params"),
    ("reference", "paper_params"),
    ("degraded", "paper_params_degraded"),
    ("paper_params_degraded.json", "paper_params_degraded"),
    ("custom_run", "custom_run"),
])
def test_normalize(name, expected):
    assert PresetRegistry().normalize(name) == expected


def test_available_lists_bundled_presets():
    available = get_registry().available()
    assert PresetName.values() <= set(available)


def test_load_is_cached():
    registry = PresetRegistry()
    first = registry.load("paper")
    assert registry.load("paper_params") is first


def test_unknown_preset_raises():
    with pytest.raises(ValueError, match="Unknown preset: nowhere"):
        PresetRegistry().load("nowhere")


def test_custom_directory(tmp_path):
    (tmp_path / "mine.json").write_text(
        '{"kappa_fwhm_ghz": 300, "finesse": 150, "resonance_freq_thz": 382.25,'
        ' "gamma_fwhm_mhz": 40, "g_mhz": 500}',
        encoding="utf-8",
    )
    registry = PresetRegistry(presets_dir=tmp_path)
    assert registry.available() == ["mine"]
    assert registry.is_valid("mine")
    assert registry.load("mine").system.cavity.kappa_fwhm == pytest.approx(300e9)


def test_reset_creates_new_singleton():
    before = get_registry()
    reset_registry()
    assert get_registry() is not before
