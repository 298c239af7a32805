# molcav/models/parameter_file.py
"""
Scenario parameter files.

A parameter file is a flat JSON object. Every dimensional key carries an
explicit unit suffix (kappa_fwhm_ghz, tau_cav_ns, modulation_amplitude_nm)
and is converted to SI on load. A "preset" key names a bundled file whose
values form the base layer; keys of the file itself replace base keys of
the same quantity whatever their suffix.

Validation collects every violation before reporting.

Usage:
    params = load_parameter_file(Path("my_run.json"))
    system = params.system
    lock = params.lock_config()
"""

from __future__ import annotations
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from types import MappingProxyType
from typing import Any, Dict, List, Mapping, Optional, Set, Tuple, Union

from scipy.constants import c as SPEED_OF_LIGHT

from ..errors import ConfigValidationError, DomainError
from ..physics.cavity_control import FLANK_POINTS, flank_center
from ..physics.control_helpers.lock_loop import LockConfig
from ..physics.control_helpers.modulation import ModulationConfig
from ..physics.dynamics_helpers.irf import InstrumentResponse
from ..physics.parameter_algebra import beta_from_extinction, purcell_branching
from ..physics.spectra_helpers.ensemble import MoleculeEnsemble
from ..utils.common import read_json
from ..utils.log import setup_logger
from .params import CavityParams, CouplingParams, DriveParams, EmitterParams, SystemParams

log = setup_logger("models.parameter_file")

Source = Union[Path, str, Mapping[str, Any]]


# =============================================================================
# Quantities and unit suffixes
# =============================================================================

class Quantity(Enum):
    FREQUENCY = "frequency"
    TIME = "time"
    LENGTH = "length"
    ANGLE = "angle"
    VOLUME = "mode volume"
    POWER = "power"
    PHOTONS = "photon number"
    DRIFT = "drift"
    DIMENSIONLESS = "dimensionless"
    INTEGER = "integer"
    TEXT = "text"


# Suffix -> factor to SI (Hz, s, m, deg, lambda^3, W, photons, m/s)
UNIT_SUFFIXES: Dict[Quantity, Dict[str, float]] = {
    Quantity.FREQUENCY: {"hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9, "thz": 1e12},
    Quantity.TIME: {"s": 1.0, "ms": 1e-3, "us": 1e-6, "ns": 1e-9, "ps": 1e-12},
    Quantity.LENGTH: {"m": 1.0, "mm": 1e-3, "um": 1e-6, "nm": 1e-9},
    Quantity.ANGLE: {"deg": 1.0},
    Quantity.VOLUME: {"lambda3": 1.0},
    Quantity.POWER: {"w": 1.0, "mw": 1e-3, "uw": 1e-6, "nw": 1e-9},
    Quantity.PHOTONS: {"photons": 1.0},
    Quantity.DRIFT: {"nm_per_s": 1e-9},
}

# Cavity detuning may also be given in units of the cavity linewidth
KAPPA_SUFFIX = "kappa"

META_KEYS = ("scenario", "preset", "seed", "description")


@dataclass(frozen=True)
class KeySpec:
    """One schema entry: base name, quantity, group and range rule."""
    base: str
    quantity: Quantity
    group: str
    rule: str = "finite"   # finite | positive | non_negative | unit | open_unit | choice

    @property
    def suffixes(self) -> Tuple[str, ...]:
        allowed = tuple(UNIT_SUFFIXES.get(self.quantity, {}))
        return allowed + (KAPPA_SUFFIX,) if self.base == "cavity_detuning" else allowed

    @property
    def dimensional(self) -> bool:
        return self.quantity in UNIT_SUFFIXES


def _spec(group: str, *entries: Tuple[str, Quantity, str]) -> List[KeySpec]:
    return [KeySpec(base, quantity, group, rule) for base, quantity, rule in entries]


F, T, L = Quantity.FREQUENCY, Quantity.TIME, Quantity.LENGTH
D, I = Quantity.DIMENSIONLESS, Quantity.INTEGER

SCHEMA: Dict[str, KeySpec] = {s.base: s for s in [
    *_spec("cavity",
           ("kappa_fwhm", F, "positive"),
           ("finesse", D, "positive"),
           ("resonance_wavelength", L, "positive"),
           ("resonance_freq", F, "positive"),
           ("mode_volume", Quantity.VOLUME, "positive"),
           ("mode_waist_fwhm", L, "positive"),
           ("axis_angle", Quantity.ANGLE, "finite"),
           ("per_axis_offset", F, "finite")),
    *_spec("emitter",
           ("gamma_fwhm", F, "positive"),
           ("lifetime", T, "positive"),
           ("tau_ref", T, "positive"),
           ("tau_cav", T, "positive"),
           ("branching_alpha_ref", D, "open_unit"),
           ("branching_alpha", D, "open_unit"),
           ("pure_dephasing", F, "non_negative"),
           ("dipole_angle", Quantity.ANGLE, "finite")),
    *_spec("coupling",
           ("g", F, "non_negative"),
           ("extinction_dip", D, "open_unit"),
           ("beta", D, "unit")),
    *_spec("drive",
           ("probe_detuning", F, "finite"),
           ("cavity_detuning", F, "finite"),
           ("photon_flux", Quantity.PHOTONS, "non_negative"),
           ("n_crit", Quantity.PHOTONS, "positive"),
           ("saturation", D, "non_negative"),
           ("pump_rate", F, "non_negative"),
           ("pump_power_at_peak", Quantity.POWER, "positive"),
           ("noise_fraction", D, "non_negative")),
    *_spec("ensemble",
           ("ensemble_size", I, "positive"),
           ("inhomogeneous_fwhm", F, "positive"),
           ("ensemble_radius", L, "non_negative"),
           ("pedestal_amplitude", D, "non_negative")),
    *_spec("pulses",
           ("irf_fwhm", T, "positive"),
           ("initial_excited_population", D, "unit"),
           ("signal_fraction", D, "unit")),
    *_spec("lock",
           ("lock_kp", D, "finite"),
           ("lock_ki", D, "finite"),
           ("lock_sample_interval", T, "positive"),
           ("lock_actuator_range", L, "positive"),
           ("lock_noise_sigma", L, "non_negative"),
           ("lock_target_rms", L, "positive"),
           ("lock_drift", Quantity.DRIFT, "finite"),
           ("lock_duration", T, "positive")),
    *_spec("modulation",
           ("modulation_amplitude", L, "non_negative"),
           ("modulation_center", L, "finite"),
           ("modulation_flank", Quantity.TEXT, "choice"),
           ("modulation_frequency", F, "positive"),
           ("modulation_sample_rate", F, "positive"),
           ("modulation_cycles", D, "positive")),
]}

# Pairs that describe the same quantity; a file gives at most one of each
ALTERNATIVES: Tuple[Tuple[str, str], ...] = (
    ("resonance_wavelength", "resonance_freq"),
    ("gamma_fwhm", "lifetime"),
    ("extinction_dip", "beta"),
    ("saturation", "photon_flux"),
)

REQUIRED: Tuple[Tuple[str, ...], ...] = (
    ("kappa_fwhm",),
    ("finesse",),
    ("resonance_wavelength", "resonance_freq"),
    ("gamma_fwhm", "lifetime"),
    ("g",),
)

CHOICES: Dict[str, Tuple[str, ...]] = {"modulation_flank": FLANK_POINTS}

# Bases sorted longest first so "lock_drift" wins over a shorter prefix
_BASES_BY_LENGTH = sorted(SCHEMA, key=len, reverse=True)


def split_key(key: str) -> Optional[Tuple[str, str]]:
    """
    Split a file key into (base, suffix).

    Dimensionless and text keys have an empty suffix. Returns None for
    keys matching no schema entry.

    Examples:
        >>> split_key("kappa_fwhm_ghz")
        ('kappa_fwhm', 'ghz')
        >>> split_key("lock_drift_nm_per_s")
        ('lock_drift', 'nm_per_s')
        >>> split_key("finesse")
        ('finesse', '')
    """
    if key in SCHEMA:
        return key, ""
    for base in _BASES_BY_LENGTH:
        if key.startswith(base + "_"):
            return base, key[len(base) + 1:]
    return None


# =============================================================================
# Parsing
# =============================================================================

@dataclass(frozen=True)
class Entry:
    """One parsed key: file key, schema base, raw value and value in SI."""
    key: str
    base: str
    raw: Any
    value: Any


def _check_range(spec: KeySpec, key: str, value: Any) -> Optional[str]:
    if spec.rule == "choice":
        allowed = CHOICES[spec.base]
        return None if value in allowed else f"{key}: must be one of {list(allowed)} (got {value!r})"
    if not math.isfinite(value):
        return f"{key}: must be finite (got {value!r})"
    if spec.rule == "positive" and not value > 0:
        return f"{key}: must be > 0 (got {value!r})"
    if spec.rule == "non_negative" and not value >= 0:
        return f"{key}: must be >= 0 (got {value!r})"
    if spec.rule == "unit" and not 0 <= value <= 1:
        return f"{key}: must lie in [0, 1] (got {value!r})"
    if spec.rule == "open_unit" and not 0 < value <= 1:
        return f"{key}: must lie in (0, 1] (got {value!r})"
    return None


def _parse_entry(key: str, raw: Any, violations: List[str], mentioned: Set[str]) -> Optional[Entry]:
    parts = split_key(key)
    if parts is None:
        violations.append(f"{key}: unknown key")
        return None
    base, suffix = parts
    mentioned.add(base)
    spec = SCHEMA[base]

    if spec.dimensional and not suffix:
        violations.append(
            f"{key}: {spec.quantity.value} key needs a unit suffix "
            f"(one of {', '.join('_' + s for s in spec.suffixes)})"
        )
        return None
    if suffix and suffix not in spec.suffixes:
        allowed = ", ".join("_" + s for s in spec.suffixes) if spec.suffixes else "none"
        violations.append(f"{key}: unknown unit suffix _{suffix} (allowed: {allowed})")
        return None

    if spec.quantity is Quantity.TEXT:
        if not isinstance(raw, str):
            violations.append(f"{key}: expected text (got {type(raw).__name__})")
            return None
        problem = _check_range(spec, key, raw)
        if problem:
            violations.append(problem)
            return None
        return Entry(key, base, raw, raw)

    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        violations.append(f"{key}: expected a number (got {raw!r})")
        return None
    if spec.quantity is Quantity.INTEGER and not float(raw).is_integer():
        violations.append(f"{key}: expected an integer (got {raw!r})")
        return None

    problem = _check_range(spec, key, float(raw))
    if problem:
        violations.append(problem)
        return None

    if suffix == KAPPA_SUFFIX:
        value: Any = (KAPPA_SUFFIX, float(raw))
    elif spec.dimensional:
        value = float(raw) * UNIT_SUFFIXES[spec.quantity][suffix]
    elif spec.quantity is Quantity.INTEGER:
        value = int(raw)
    else:
        value = float(raw)
    return Entry(key, base, raw, value)


def _parse_meta(key: str, raw: Any, violations: List[str]) -> None:
    if key == "seed":
        if isinstance(raw, bool) or not isinstance(raw, int) or raw < 0:
            violations.append(f"seed: expected a non-negative integer (got {raw!r})")
    elif not isinstance(raw, str):
        violations.append(f"{key}: expected text (got {raw!r})")


def parse_layer(
    mapping: Mapping[str, Any],
    violations: List[str],
    mentioned: Optional[Set[str]] = None,
) -> Tuple[Dict[str, Entry], Dict[str, Any]]:
    """
    Parse one file's keys into entries by base name plus its meta keys.

    Bases named by any key, valid or not, are added to mentioned.
    """
    mentioned = set() if mentioned is None else mentioned
    entries: Dict[str, Entry] = {}
    meta: Dict[str, Any] = {}
    for key, raw in mapping.items():
        if key in META_KEYS:
            _parse_meta(key, raw, violations)
            meta[key] = raw
            continue
        entry = _parse_entry(key, raw, violations, mentioned)
        if entry is None:
            continue
        if entry.base in entries:
            violations.append(f"{key}: duplicates {entries[entry.base].key}")
            continue
        entries[entry.base] = entry

    for a, b in ALTERNATIVES:
        if a in entries and b in entries:
            violations.append(f"{entries[a].key}, {entries[b].key}: give one or the other, not both")
    return entries, meta


def _overlay(base: Dict[str, Entry], top: Dict[str, Entry]) -> Dict[str, Entry]:
    merged = dict(base)
    for a, b in ALTERNATIVES:
        if a in top:
            merged.pop(b, None)
        if b in top:
            merged.pop(a, None)
    merged.update(top)
    return merged


# =============================================================================
# Layers and presets
# =============================================================================

def _read_source(source: Source) -> Tuple[str, Mapping[str, Any]]:
    if isinstance(source, Mapping):
        return "<mapping>", source
    path = Path(source)
    return str(path), read_json(path)


def _preset_path(name: str) -> Path:
    # Lazy import: the registry loads files through this module
    from .preset_registry import get_registry
    return get_registry().path(name)


def _collect_layers(
    source: Source,
    violations: List[str],
    mentioned: Set[str],
    seen: Tuple[str, ...] = (),
) -> Tuple[Dict[str, Entry], Dict[str, Any]]:
    try:
        label, mapping = _read_source(source)
    except FileNotFoundError:
        violations.append(f"{source}: file not found")
        return {}, {}
    except ValueError as e:
        violations.append(f"{source}: not a valid parameter file ({e})")
        return {}, {}

    entries, meta = parse_layer(mapping, violations, mentioned)
    preset = meta.get("preset")
    if not isinstance(preset, str):
        return entries, meta

    if preset in seen:
        violations.append(f"preset: circular inheritance through {' -> '.join(seen + (preset,))}")
        return entries, meta
    path = _preset_path(preset)
    if not path.exists():
        violations.append(f"preset: no bundled parameter file named {preset!r}")
        return entries, meta

    base_entries, base_meta = _collect_layers(path, violations, mentioned, seen + (preset,))
    log.debug(f"[parameter_file] {label}: {len(entries)} keys over preset {preset} ({len(base_entries)} keys)")
    merged_meta = {k: v for k, v in base_meta.items() if k != "preset"}
    merged_meta.update(meta)
    return _overlay(base_entries, entries), merged_meta


def _check_required(mentioned: Set[str], violations: List[str]) -> None:
    for options in REQUIRED:
        if not any(o in mentioned for o in options):
            names = " or ".join(options)
            suffixes = SCHEMA[options[0]].suffixes
            hint = f" (suffixes: {', '.join('_' + s for s in suffixes)})" if suffixes else ""
            violations.append(f"missing required key {names}{hint}")


def _si_values(entries: Mapping[str, Entry]) -> Dict[str, Any]:
    """SI values by base name, with cavity detuning in kappa units resolved."""
    values = {base: e.value for base, e in entries.items()}
    detuning = values.get("cavity_detuning")
    if isinstance(detuning, tuple):
        values["cavity_detuning"] = detuning[1] * values["kappa_fwhm"]
    return values


# =============================================================================
# System construction
# =============================================================================

def build_system(values: Mapping[str, Any]) -> SystemParams:
    """
    Construct SystemParams from SI values keyed by base name.

    alpha_cav comes from the Purcell-modified lifetime when tau_ref, tau_cav
    and branching_alpha_ref are all present; beta comes from the
    weak-probe extinction dip when given.

    Raises:
        DomainError: a parameter record rejects its values
    """
    if "resonance_freq" in values:
        resonance = values["resonance_freq"]
    else:
        resonance = SPEED_OF_LIGHT / values["resonance_wavelength"]

    cavity = CavityParams(
        kappa_fwhm=values["kappa_fwhm"],
        finesse=values["finesse"],
        resonance_freq=resonance,
        mode_volume=values.get("mode_volume", 1.7),
        mode_waist_fwhm=values.get("mode_waist_fwhm", 1.0e-6),
        axis_angle_deg=values.get("axis_angle", 90.0),
        per_axis_offset=values.get("per_axis_offset", 0.0),
    )

    tau_ref = values.get("tau_ref")
    tau_cav = values.get("tau_cav")
    alpha_ref = values.get("branching_alpha_ref")
    enhancement = None
    if tau_ref is not None and tau_cav is not None and alpha_ref is not None:
        enhancement, alpha_cav = purcell_branching(tau_cav, tau_ref, alpha_ref)
    else:
        alpha_cav = values.get("branching_alpha", 1.0)

    cavity_detuning = values.get("cavity_detuning", 0.0)
    zpl = resonance - cavity_detuning
    emitter_kwargs = dict(
        branching_alpha=alpha_cav,
        pure_dephasing=values.get("pure_dephasing", 0.0),
        dipole_angle_deg=values.get("dipole_angle", 0.0),
    )
    if "lifetime" in values:
        emitter = EmitterParams.from_lifetime(values["lifetime"], zpl, **emitter_kwargs)
    else:
        emitter = EmitterParams(zpl_freq=zpl, gamma_fwhm=values["gamma_fwhm"], **emitter_kwargs)

    if "extinction_dip" in values:
        beta = beta_from_extinction(values["extinction_dip"], alpha_cav)
    else:
        beta = values.get("beta", 0.0)
    coupling = CouplingParams.from_rates(values["g"], cavity.kappa_fwhm, emitter.gamma_fwhm, beta)

    n_crit = values.get("n_crit", 1.8)
    flux = values["saturation"] * n_crit if "saturation" in values else values.get("photon_flux", 0.0)
    drive = DriveParams(
        probe_detuning=values.get("probe_detuning", 0.0),
        cavity_detuning=cavity_detuning,
        photon_flux=flux,
        critical_photon_number=n_crit,
        pump_rate=values.get("pump_rate", 0.0),
    )
    return SystemParams(
        cavity=cavity,
        emitter=emitter,
        coupling=coupling,
        drive=drive,
        tau_ref=tau_ref,
        tau_cav=tau_cav,
        alpha_ref=alpha_ref,
        zpl_enhancement=enhancement,
    )


# =============================================================================
# Loaded file
# =============================================================================

@dataclass(frozen=True)
class ParameterFile:
    """
    A validated parameter file with its preset layers merged.

    Attributes:
        source: Path (or "<mapping>") it was read from
        values: SI values by base name
        keys: File key by base name, as written (e.g. "kappa_fwhm_ghz")
        raw: Values as written, by file key
        meta: scenario / preset / seed / description
        system: Physical parameters built from the values
    """
    source: str
    values: Mapping[str, Any]
    keys: Mapping[str, str]
    raw: Mapping[str, Any]
    meta: Mapping[str, Any]
    system: SystemParams = field(repr=False)

    def get(self, base: str, default: Any = None) -> Any:
        return self.values.get(base, default)

    def require(self, base: str) -> Any:
        """SI value of a key the caller cannot do without."""
        if base not in self.values:
            suffixes = SCHEMA[base].suffixes
            hint = f" (e.g. {base}_{suffixes[0]})" if suffixes else ""
            raise DomainError(f"parameter file {self.source} has no {base}{hint}")
        return self.values[base]

    @property
    def seed(self) -> Optional[int]:
        seed = self.meta.get("seed")
        return int(seed) if seed is not None else None

    @property
    def preset(self) -> Optional[str]:
        return self.meta.get("preset")

    def flattened(self) -> Dict[str, Any]:
        """All keys as written after inheritance; loading this mapping rebuilds the same file."""
        out: Dict[str, Any] = dict(self.raw)
        for key in ("seed", "description"):
            if key in self.meta:
                out[key] = self.meta[key]
        return out

    # -------------------------------------------------------------------------
    # Derived configurations
    # -------------------------------------------------------------------------

    def irf(self) -> Optional[InstrumentResponse]:
        fwhm = self.get("irf_fwhm")
        return InstrumentResponse(fwhm) if fwhm else None

    def lock_config(self, *, seed: int = 0, closed_loop: bool = True,
                    noise_sigma: Optional[float] = None) -> LockConfig:
        from ..config import DEFAULT_CONFIG as CFG
        return LockConfig(
            kp=self.get("lock_kp", 0.0),
            ki=self.get("lock_ki", 0.5),
            sample_interval=self.get("lock_sample_interval", CFG.LOCK_SAMPLE_INTERVAL_S),
            actuator_range=self.get("lock_actuator_range", 1e-6),
            noise_sigma=self.get("lock_noise_sigma", 0.0) if noise_sigma is None else noise_sigma,
            drift=self.get("lock_drift", 0.0),
            seed=seed,
            closed_loop=closed_loop,
        )

    def lock_duration(self) -> float:
        from ..config import DEFAULT_CONFIG as CFG
        return self.get("lock_duration", CFG.LOCK_DURATION_S)

    def modulation_center(self) -> float:
        """Explicit modulation_center, else the flank point named by modulation_flank."""
        if "modulation_center" in self.values:
            return self.values["modulation_center"]
        return flank_center(self.system.cavity, self.get("modulation_flank", "half_max"))

    def modulation_config(
        self,
        frequency: Optional[float] = None,
        sample_rate: Optional[float] = None,
        center: Optional[float] = None,
    ) -> ModulationConfig:
        """
        Length modulation from the file, with optional overrides.

        Without a sample rate, MODULATION_SAMPLES_PER_PERIOD samples per period are used.
        """
        from ..config import DEFAULT_CONFIG as CFG
        f = frequency if frequency is not None else self.require("modulation_frequency")
        if sample_rate is None:
            sample_rate = self.get("modulation_sample_rate") if frequency is None else None
        if sample_rate is None:
            sample_rate = CFG.MODULATION_SAMPLES_PER_PERIOD * f
        cycles = self.get("modulation_cycles", float(CFG.MODULATION_CYCLES))
        return ModulationConfig(
            center=self.modulation_center() if center is None else center,
            amplitude=self.require("modulation_amplitude"),
            frequency=f,
            duration=cycles / f,
            sample_rate=sample_rate,
        )

    def ensemble(self, seed: int = 0) -> MoleculeEnsemble:
        """Molecules drawn over the inhomogeneous band, centred on the cavity resonance."""
        return MoleculeEnsemble.sample(
            count=self.require("ensemble_size"),
            band_center=self.system.cavity.resonance_freq,
            inhomogeneous_fwhm=self.require("inhomogeneous_fwhm"),
            lateral_radius=self.get("ensemble_radius", 0.0),
            seed=seed,
        )


# =============================================================================
# Entry points
# =============================================================================

def _check_group_invariants(pf: ParameterFile, violations: List[str]) -> None:
    """Build the optional sub-configurations so their invariants are checked up front."""
    checks = []
    if "irf_fwhm" in pf.values:
        checks.append(("pulses", pf.irf))
    if any(k.startswith("lock_") for k in pf.values):
        checks.append(("lock", pf.lock_config))
    if "modulation_frequency" in pf.values and "modulation_amplitude" in pf.values:
        checks.append(("modulation", pf.modulation_config))
    if "ensemble_size" in pf.values and "inhomogeneous_fwhm" in pf.values:
        checks.append(("ensemble", lambda: pf.ensemble(seed=pf.seed or 0)))
    for group, build in checks:
        try:
            build()
        except DomainError as e:
            violations.append(f"{group} parameters: {e}")


def _load(source: Source) -> Tuple[Optional[ParameterFile], List[str]]:
    violations: List[str] = []
    mentioned: Set[str] = set()
    entries, meta = _collect_layers(source, violations, mentioned)
    label = "<mapping>" if isinstance(source, Mapping) else str(source)
    if not entries and not meta and violations:
        return None, violations

    _check_required(mentioned, violations)
    if violations:
        return None, violations

    values = _si_values(entries)
    try:
        system = build_system(values)
    except DomainError as e:
        return None, [f"invariant: {e}"]

    pf = ParameterFile(
        source=label,
        values=MappingProxyType(values),
        keys=MappingProxyType({base: e.key for base, e in entries.items()}),
        raw=MappingProxyType({e.key: e.raw for e in entries.values()}),
        meta=MappingProxyType(meta),
        system=system,
    )
    _check_group_invariants(pf, violations)
    return (None if violations else pf), violations


def validate_parameter_file(source: Source) -> List[str]:
    """
    Every violation in a parameter file (empty list when valid).

    Checks keys, unit suffixes, value types, ranges, required keys, preset
    inheritance and the invariants of the records built from the values.
    """
    _, violations = _load(source)
    log.debug(f"[parameter_file] validated {source if not isinstance(source, Mapping) else '<mapping>'}: "
              f"{len(violations)} violation(s)")
    return violations


def load_parameter_file(source: Source) -> ParameterFile:
    """
    Load and validate a parameter file.

    Raises:
        ConfigValidationError: with every violation found
    """
    pf, violations = _load(source)
    if pf is None:
        label = "<mapping>" if isinstance(source, Mapping) else str(source)
        raise ConfigValidationError(violations, source=label)
    log.info(
        f"[parameter_file] loaded {pf.source}: {len(pf.values)} parameters"
        + (f", preset {pf.preset}" if pf.preset else "")
    )
    return pf
