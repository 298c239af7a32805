# molcav/physics/__init__.py
"""
Forward models of the molecule-microcavity system.

- parameter_algebra: closed-form rates, cooperativity and Purcell arithmetic
- spectra: steady-state transmission, Fano series, saturation, ensembles, mode maps
- dynamics: pumped probe, CW amplification, pulsed response through an IRF
- cavity_control: cross-polarized detection, Hansch-Couillaud lock, length modulation

The *_helpers packages hold the kernels each of these is built from.
"""

from .parameter_algebra import (
    ConsistencyReport,
    beta_from_extinction,
    consistency_report,
    cooperativity,
    length_to_detuning,
    linewidth_from_lifetime,
    purcell_branching,
    quality_factor,
    saturation_parameter,
)
from .spectra import (
    coupled_response,
    ensemble_spectrum,
    fano_series,
    mode_map,
    saturation_curve,
    saturation_transmission,
)
from .dynamics import (
    PulseConfig,
    amplification_curve,
    probe_transmission_with_pump,
    pulsed_response,
    stimulated_difference,
)
from .cavity_control import (
    cross_polarized_throughput,
    hc_error_signal,
    harmonic_spectrum,
    lock_simulate,
    modulated_emission,
)

__all__ = [
    "ConsistencyReport",
    "beta_from_extinction",
    "consistency_report",
    "cooperativity",
    "length_to_detuning",
    "linewidth_from_lifetime",
    "purcell_branching",
    "quality_factor",
    "saturation_parameter",
    "coupled_response",
    "ensemble_spectrum",
    "fano_series",
    "mode_map",
    "saturation_curve",
    "saturation_transmission",
    "PulseConfig",
    "amplification_curve",
    "probe_transmission_with_pump",
    "pulsed_response",
    "stimulated_difference",
    "cross_polarized_throughput",
    "hc_error_signal",
    "harmonic_spectrum",
    "lock_simulate",
    "modulated_emission",
]
