# molcav/core/scenario_executor.py
"""
Scenario executor.

Resolves the parameter file of a scenario, runs its function with the
progress callback injected, writes traces, results and manifest into the
run directory, and maps failures onto CLI exit codes.

Batches run in separate processes, one output directory per scenario.
"""

from __future__ import annotations
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from ..errors import (
    EXIT_DOMAIN_ERROR,
    EXIT_IO_ERROR,
    EXIT_OK,
    EXIT_VALIDATION_ERROR,
    ConfigValidationError,
    DomainError,
)
from ..models.parameter_file import ParameterFile, load_parameter_file
from ..models.preset_registry import get_registry
from ..models.trace import write_traces_csv
from ..utils.common import write_json
from ..utils.hardware import log_system_info, resolve_jobs
from ..utils.log import clear_logger_configuration, reconfigure_loggers, setup_logger
from ..utils.progress_reporter import set_progress_callback
from . import scenario_registry
from .models import RunManifest, Scenario, ScenarioContext, ScenarioOutput

logger = setup_logger("core.scenario_executor")


@dataclass
class RunReport:
    """Outcome of one scenario run; picklable so batch workers can return it."""
    name: str
    exit_code: int
    run_dir: Optional[Path] = None
    results: Dict[str, Any] = field(default_factory=dict)
    files: List[Path] = field(default_factory=list)
    fit_summaries: List[str] = field(default_factory=list)
    error: str = ""

    @property
    def ok(self) -> bool:
        return self.exit_code == EXIT_OK


def resolve_parameters(scenario: Scenario) -> tuple[ParameterFile, Optional[str], str]:
    """
    Parameter file for a scenario, with the preset name and a source label.

    Precedence: recorded parameters (rerun), then --config, then --preset,
    then the scenario's default preset.
    """
    if scenario.parameters is not None:
        return load_parameter_file(scenario.parameters), scenario.preset, "manifest"
    if scenario.config is not None:
        params = load_parameter_file(Path(scenario.config))
        return params, params.preset, str(scenario.config)

    registry = get_registry()
    preset = registry.normalize(scenario.preset or scenario_registry.get_scenario(scenario.name).preset)
    return registry.load(preset), preset, f"preset:{preset}"


def exit_code_for(error: BaseException) -> int:
    """CLI exit code of a failure."""
    if isinstance(error, ConfigValidationError):
        return EXIT_VALIDATION_ERROR
    if isinstance(error, DomainError):
        return EXIT_DOMAIN_ERROR
    if isinstance(error, OSError):
        return EXIT_IO_ERROR
    # Unknown scenario or preset names
    if isinstance(error, ValueError):
        return EXIT_VALIDATION_ERROR
    raise error


def write_outputs(run_dir: Path, output: ScenarioOutput, manifest: RunManifest) -> List[Path]:
    """traces/<name>.csv for every trace group, then results.json and manifest.json."""
    from ..io_paths import _mk, manifest_path, results_path, trace_path

    files = []
    for name in sorted(output.traces):
        files.append(write_traces_csv(_mk(trace_path(run_dir, name)), output.traces[name]))
    files.append(write_json(results_path(run_dir), output.results))
    files.append(manifest.write(manifest_path(run_dir)))
    return files


class ScenarioExecutor:
    def __init__(
        self,
        on_scenario_started=None,
        on_scenario_progress=None,  # Expected: (name, current, total, message)
        on_scenario_completed=None,
        on_error=None
    ):
        """
        Args:
            on_scenario_started: Callback(name)
            on_scenario_progress: Callback(name, current, total, message)
            on_scenario_completed: Callback(name, report)
            on_error: Callback(name, error_message)
        """
        self.on_scenario_started = on_scenario_started or (lambda name: None)
        self.on_scenario_progress = on_scenario_progress or (lambda name, current, total, msg: None)
        self.on_scenario_completed = on_scenario_completed or (lambda name, report: None)
        self.on_error = on_error or (lambda name, error: None)

    # -------------------------------------------------------------------------
    # Single scenario
    # -------------------------------------------------------------------------

    def run(self, scenario: Scenario) -> RunReport:
        """
        Run one scenario and write its artifacts.

        Returns a report with the exit code instead of raising for
        validation, domain and I/O failures.
        """
        name = scenario.name

        def scenario_progress_callback(current: int, total: int, message: str):
            self.on_scenario_progress(name, current, total, message)
            if total:
                logger.debug(f"[progress] {name}: {current}/{total} {message}")

        run_dir: Optional[Path] = None
        try:
            self.on_scenario_started(name)
            entry = scenario_registry.get_scenario(name)
            params, preset, source = resolve_parameters(scenario)
            seed = scenario.seed if scenario.seed is not None else (params.seed or 0)

            run_dir = scenario.run_directory()
            reconfigure_loggers(run_dir)
            logger.info(f"▶ Starting scenario: {name} ({source}, seed {seed}, model {scenario.model})")

            set_progress_callback(scenario_progress_callback)
            ctx = ScenarioContext(scenario=scenario, params=params, seed=seed, run_dir=run_dir)
            output = entry.function(ctx)
            set_progress_callback(None)

            from .. import __version__
            manifest = RunManifest(
                scenario=name,
                preset=preset,
                config_source=source,
                parameters=params.flattened(),
                seed=seed,
                model=scenario.model,
                version=__version__,
            )
            files = write_outputs(run_dir, output, manifest)

            report = RunReport(name, EXIT_OK, run_dir, dict(output.results), files, list(output.fit_summaries))
            logger.info(f"✓ Completed scenario: {name} ({len(files)} files in {run_dir})")
            self.on_scenario_completed(name, report)
            return report

        except Exception as e:
            set_progress_callback(None)
            logger.error(f"✘ Scenario {name} failed: {e}", exc_info=True)
            self.on_error(name, str(e))
            return RunReport(name, exit_code_for(e), run_dir, error=str(e))

        finally:
            clear_logger_configuration()

    # -------------------------------------------------------------------------
    # Batch
    # -------------------------------------------------------------------------

    def run_batch(self, batch: Sequence[Scenario], jobs: int = 0) -> List[RunReport]:
        """
        Run scenarios in worker processes.

        Reports come back in submission order. jobs <= 0 derives the
        worker count from the CPU count; one worker runs in-process.
        """
        if not batch:
            return []
        workers = resolve_jobs(jobs, len(batch))
        if workers == 1:
            return [self.run(s) for s in batch]

        log_system_info()
        logger.info(f"[batch] {len(batch)} scenarios on {workers} workers")
        reports: List[Optional[RunReport]] = [None] * len(batch)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {pool.submit(run_scenario, s): i for i, s in enumerate(batch)}
            for name in (s.name for s in batch):
                self.on_scenario_started(name)
            for future in as_completed(futures):
                i = futures[future]
                report = future.result()
                reports[i] = report
                if report.ok:
                    self.on_scenario_completed(report.name, report)
                else:
                    self.on_error(report.name, report.error)
        return [r for r in reports if r is not None]


def run_scenario(scenario: Scenario) -> RunReport:
    """Worker entry point: run one scenario without callbacks."""
    return ScenarioExecutor().run(scenario)
