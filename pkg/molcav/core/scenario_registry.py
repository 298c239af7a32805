# molcav/core/scenario_registry.py
"""
Centralized registry for scenarios.
Single source of truth - scenario functions, default presets and descriptions.
"""

from __future__ import annotations
from dataclasses import dataclass
from typing import Callable, Dict, List

from .. import scenarios
from ..models.preset_registry import PresetName

PAPER = PresetName.PAPER.value
DEGRADED = PresetName.DEGRADED.value


@dataclass(frozen=True)
class ScenarioEntry:
    """Run function, preset used when no config is given, and a one-line description."""
    name: str
    function: Callable
    preset: str
    description: str


# Ordered list of all scenarios in run sequence
SCENARIO_SEQUENCE = [s.value for s in scenarios.ScenarioName]

_ENTRIES: Dict[str, ScenarioEntry] = {
    e.name: e for e in [
        ScenarioEntry("params", scenarios.parameters.run_params, PAPER,
                      "Derived parameters: cooperativity, Purcell branching, beta, dip depths"),
        ScenarioEntry("fig3a", scenarios.spectroscopy.run_ensemble, PAPER,
                      "Ensemble fluorescence with and without the cavity; envelope linewidth"),
        ScenarioEntry("fig3b", scenarios.spectroscopy.run_single_line, PAPER,
                      "Single-molecule excitation line at weak drive"),
        ScenarioEntry("fig3c", scenarios.spectroscopy.run_g2, PAPER,
                      "Intensity correlation with background"),
        ScenarioEntry("fig3d", scenarios.spectroscopy.run_mode_map, PAPER,
                      "Lateral mode map of a saturated molecule"),
        ScenarioEntry("fig3e", scenarios.spectroscopy.run_extinction, PAPER,
                      "Extinction dip under the linear and single-pass (eq1) models"),
        ScenarioEntry("fig4a", scenarios.fano.run_fano_a, DEGRADED,
                      "Probe sweep at cavity detuning +kappa"),
        ScenarioEntry("fig4b", scenarios.fano.run_fano_b, DEGRADED,
                      "Probe sweep at cavity detuning +0.8 kappa"),
        ScenarioEntry("fig4c", scenarios.fano.run_fano_c, DEGRADED,
                      "Probe sweep at cavity detuning -0.8 kappa"),
        ScenarioEntry("fig4d", scenarios.fano.run_fano_d, DEGRADED,
                      "Probe sweep at cavity detuning -kappa"),
        ScenarioEntry("fig4e", scenarios.fano.run_saturation, DEGRADED,
                      "Saturation of the extinction versus photon flux, with fit"),
        ScenarioEntry("fig5a", scenarios.gain.run_probe_a, PAPER,
                      "Probe transmission without pump"),
        ScenarioEntry("fig5b", scenarios.gain.run_probe_b, PAPER,
                      "Probe transmission at pump rate gamma (transparency)"),
        ScenarioEntry("fig5c", scenarios.gain.run_probe_c, PAPER,
                      "Probe transmission at pump rate 3 gamma (gain)"),
        ScenarioEntry("fig5d", scenarios.gain.run_amplification, PAPER,
                      "Resonant gain versus pump power, with dephasing fit"),
        ScenarioEntry("fig5e", scenarios.gain.run_pulsed, PAPER,
                      "Pulsed emission with probe off, on and off resonance"),
        ScenarioEntry("fig5f", scenarios.gain.run_stimulated, PAPER,
                      "Stimulated-emission difference and its zero crossing"),
        ScenarioEntry("fig6a", scenarios.modulation.run_modulation, DEGRADED,
                      "Emission under sinusoidal cavity-length modulation"),
        ScenarioEntry("fig6b", scenarios.modulation.run_harmonics, DEGRADED,
                      "Harmonic content of the modulated emission"),
        ScenarioEntry("lock", scenarios.lock.run_lock, PAPER,
                      "Hansch-Couillaud PI lock, closed and open loop"),
    ]
}


def get_scenario(name: str) -> ScenarioEntry:
    """
    Retrieve the registry entry for a scenario.

    Raises:
        ValueError: If name is not registered
    """
    if name not in _ENTRIES:
        raise ValueError(
            f"Unknown scenario: {name}. "
            f"Available: {list(_ENTRIES.keys())}"
        )
    return _ENTRIES[name]


def get_scenario_function(name: str) -> Callable:
    return get_scenario(name).function


def get_all_scenarios() -> List[str]:
    """All scenario names in run order."""
    return SCENARIO_SEQUENCE.copy()
