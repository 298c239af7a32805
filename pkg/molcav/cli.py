# molcav/cli.py
"""
Command-line front end.

    python -m molcav run fig3e --model eq1
    python -m molcav run all --jobs 4 --out runs/
    python -m molcav validate my_params.json
    python -m molcav list
    python -m molcav rerun runs/fig3e/manifest.json

Exit codes: 0 success, 1 I/O failure, 2 configuration validation failure,
3 model domain error. A batch returns the first non-zero code in
submission order.
"""

from __future__ import annotations
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import __version__
from .config import DEFAULT_CONFIG as CFG
from .core.models import EXTINCTION_MODELS, RunManifest, Scenario
from .core.scenario_executor import RunReport, ScenarioExecutor
from .core.scenario_registry import get_all_scenarios, get_scenario
from .errors import EXIT_IO_ERROR, EXIT_OK, EXIT_VALIDATION_ERROR
from .models.parameter_file import validate_parameter_file
from .models.preset_registry import get_registry
from .utils.log import setup_console_logger

log = setup_console_logger("cli", getattr(logging, str(CFG.LOG_LEVEL).upper(), logging.INFO))


# =============================================================================
# Parser
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="molcav",
        description="Molecule-microcavity simulations and fits, one scenario per figure panel.",
    )
    parser.add_argument("--version", action="version", version=f"molcav {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run one or more scenarios ('all' runs every scenario)")
    run.add_argument("scenarios", nargs="+", metavar="SCENARIO")
    run.add_argument("--config", type=Path, help="Parameter file (JSON)")
    run.add_argument("--preset", help="Bundled parameter file used when --config is absent")
    run.add_argument("--out", type=Path, help=f"Output root (default: {CFG.OUTPUT_ROOT})")
    run.add_argument("--seed", type=int, help="Overrides the parameter file's seed")
    run.add_argument("--model", choices=EXTINCTION_MODELS, default="linear",
                     help="Extinction model selector")
    run.add_argument("--jobs", type=int, default=CFG.DEFAULT_JOBS,
                     help="Concurrent scenarios (0: derive from CPU count)")

    validate = sub.add_parser("validate", help="Check parameter files without running")
    validate.add_argument("configs", nargs="+", type=Path, metavar="CONFIG")

    sub.add_parser("list", help="List scenarios and bundled presets")

    rerun = sub.add_parser("rerun", help="Re-execute a run from its manifest")
    rerun.add_argument("manifest", type=Path)
    rerun.add_argument("--out", type=Path, help="Output root for the repeated run")
    return parser


# =============================================================================
# Commands
# =============================================================================

def _expand(names: Sequence[str]) -> List[str]:
    """Scenario names in the given order; 'all' expands to the full sequence."""
    out: List[str] = []
    for name in names:
        for n in (get_all_scenarios() if name == "all" else [name]):
            if n not in out:
                out.append(n)
    return out


def _print_report(report: RunReport) -> None:
    if not report.ok:
        print(f"{report.name}: FAILED (exit {report.exit_code}): {report.error}", file=sys.stderr)
        return
    print(f"{report.name}: ok -> {report.run_dir}")
    for line in report.fit_summaries:
        print(f"  {line}")


def _first_failure(reports: Sequence[RunReport]) -> int:
    return next((r.exit_code for r in reports if not r.ok), EXIT_OK)


def _executor() -> ScenarioExecutor:
    return ScenarioExecutor(
        on_scenario_started=lambda name: log.info(f"▶ {name}"),
        on_scenario_progress=lambda name, cur, total, msg: log.debug(f"[{name}] {cur}/{total} {msg}"),
    )


def cmd_run(args: argparse.Namespace) -> int:
    names = _expand(args.scenarios)
    for name in names:
        try:
            get_scenario(name)
        except ValueError as e:
            print(str(e), file=sys.stderr)
            return EXIT_VALIDATION_ERROR

    batch = [
        Scenario(
            name=name,
            config=args.config,
            preset=args.preset,
            out=args.out,
            seed=args.seed,
            model=args.model,
        )
        for name in names
    ]
    reports = _executor().run_batch(batch, jobs=args.jobs)
    for report in reports:
        _print_report(report)
    return _first_failure(reports)


def cmd_validate(args: argparse.Namespace) -> int:
    code = EXIT_OK
    for path in args.configs:
        if not path.is_file():
            print(f"{path}: file not found", file=sys.stderr)
            code = code or EXIT_IO_ERROR
            continue
        violations = validate_parameter_file(path)
        print(f"{path}: {len(violations)} violation(s)")
        for v in violations:
            print(f"  - {v}")
        if violations:
            code = code or EXIT_VALIDATION_ERROR
    return code


def cmd_list(args: argparse.Namespace) -> int:
    print("Scenarios:")
    for name in get_all_scenarios():
        entry = get_scenario(name)
        print(f"  {name:<7} [{entry.preset}] {entry.description}")
    print("Presets:")
    for preset in get_registry().available():
        print(f"  {preset}")
    return EXIT_OK


def cmd_rerun(args: argparse.Namespace) -> int:
    try:
        manifest = RunManifest.read(args.manifest)
    except OSError as e:
        print(f"{args.manifest}: {e}", file=sys.stderr)
        return EXIT_IO_ERROR
    except ValueError as e:
        print(f"{args.manifest}: {e}", file=sys.stderr)
        return EXIT_VALIDATION_ERROR

    report = _executor().run(manifest.to_scenario(args.out))
    _print_report(report)
    return report.exit_code


_COMMANDS = {
    "run": cmd_run,
    "validate": cmd_validate,
    "list": cmd_list,
    "rerun": cmd_rerun,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
