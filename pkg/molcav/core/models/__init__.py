# molcav/core/models/__init__.py
"""
Run-level records: what to run, what a scenario sees while running,
what it hands back, and the manifest that lets a run be repeated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, List, Mapping, Optional

import numpy as np

from ...models.parameter_file import ParameterFile
from ...models.trace import Trace
from ...utils.common import read_json, write_json

if TYPE_CHECKING:
    from ...fitting.optimizer import FitResult

EXTINCTION_MODELS = ("linear", "eq1")


@dataclass(frozen=True)
class Scenario:
    """
    One requested run.

    Attributes:
        name: Scenario name from the registry (e.g. "fig3e")
        config: Parameter file; None uses the scenario's default preset
        preset: Bundled preset name used when config is None
        out: Output root; the run directory is out/name
        seed: Overrides the parameter file's seed
        model: Extinction model selector ("linear" or "eq1")
        parameters: Already-flattened parameter mapping (used by rerun)
    """
    name: str
    config: Optional[Path] = None
    preset: Optional[str] = None
    out: Optional[Path] = None
    seed: Optional[int] = None
    model: str = "linear"
    parameters: Optional[Mapping[str, Any]] = None

    def __post_init__(self):
        if self.model not in EXTINCTION_MODELS:
            raise ValueError(f"Unknown extinction model: {self.model}. Available: {list(EXTINCTION_MODELS)}")

    def run_directory(self) -> Path:
        from ...io_paths import run_dir
        return run_dir(self.name, self.out)


@dataclass
class ScenarioContext:
    """Everything a scenario function needs: parameters, seed and model selector."""
    scenario: Scenario
    params: ParameterFile
    seed: int
    run_dir: Path

    @property
    def system(self):
        return self.params.system

    @property
    def model(self) -> str:
        return self.scenario.model

    def rng(self, offset: int = 0) -> np.random.Generator:
        """Generator seeded from the run seed; offset separates independent streams."""
        return np.random.default_rng(self.seed + offset)


@dataclass
class ScenarioOutput:
    """
    Traces and scalar results produced by a scenario.

    traces maps a CSV stem to the traces stacked into that file;
    fit_summaries holds one "name = value ± stderr" line per fit.
    """
    traces: Dict[str, List[Trace]] = field(default_factory=dict)
    results: Dict[str, Any] = field(default_factory=dict)
    fit_summaries: List[str] = field(default_factory=list)

    def add_trace(self, name: str, *traces: Trace) -> None:
        self.traces.setdefault(name, []).extend(traces)

    def add_results(self, mapping: Optional[Mapping[str, Any]] = None, **values: Any) -> None:
        if mapping:
            self.results.update(mapping)
        self.results.update(values)

    def add_fit(self, fit: "FitResult", prefix: str = "") -> None:
        """Fit parameters, errors and status into results, plus its summary line."""
        self.results.update(fit.as_dict(prefix))
        self.fit_summaries.append(f"{prefix}{fit.summary_line()}")


@dataclass(frozen=True)
class RunManifest:
    """
    Everything needed to repeat a run exactly.

    No timestamps, so identical inputs give identical bytes.
    """
    scenario: str
    preset: Optional[str]
    config_source: str
    parameters: Mapping[str, Any]
    seed: int
    model: str
    version: str

    def to_dict(self) -> Dict[str, Any]:
        return {
            "scenario": self.scenario,
            "preset": self.preset,
            "config_source": self.config_source,
            "parameters": dict(self.parameters),
            "seed": self.seed,
            "model": self.model,
            "version": self.version,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "RunManifest":
        missing = [k for k in ("scenario", "parameters", "seed", "model") if k not in data]
        if missing:
            raise ValueError(f"manifest is missing {missing}")
        return cls(
            scenario=str(data["scenario"]),
            preset=data.get("preset"),
            config_source=str(data.get("config_source", "")),
            parameters=dict(data["parameters"]),
            seed=int(data["seed"]),
            model=str(data["model"]),
            version=str(data.get("version", "")),
        )

    def write(self, path: Path) -> Path:
        return write_json(path, self.to_dict())

    @classmethod
    def read(cls, path: Path) -> "RunManifest":
        return cls.from_dict(read_json(Path(path)))

    def to_scenario(self, out: Optional[Path] = None) -> Scenario:
        """Scenario that re-executes this run from the recorded parameters."""
        return Scenario(
            name=self.scenario,
            preset=self.preset,
            out=out,
            seed=self.seed,
            model=self.model,
            parameters=self.parameters,
        )


__all__ = ["EXTINCTION_MODELS", "Scenario", "ScenarioContext", "ScenarioOutput", "RunManifest"]
