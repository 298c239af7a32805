# molcav/io_paths.py
"""
Centralized path helpers for run-scoped artifacts.
Layout:
    {out}/{scenario}/
        results.json
        manifest.json
        traces/    (one CSV per trace or trace group)
        logs/
"""

from pathlib import Path
from typing import Optional

from .config import DEFAULT_CONFIG as CFG


def _mk(path: Path) -> Path:
    """Ensure the path exists (directory or parent for file)."""
    if path.suffix:
        path.parent.mkdir(parents=True, exist_ok=True)
    else:
        path.mkdir(parents=True, exist_ok=True)
    return path


# --- Run directories ---
def output_root(out: Optional[Path] = None) -> Path: return Path(out) if out else CFG.OUTPUT_ROOT
def run_dir(scenario: str, out: Optional[Path] = None) -> Path: return output_root(out) / scenario

# --- Files inside a run directory ---
def traces_dir(run: Path) -> Path: return run / "traces"
def trace_path(run: Path, name: str) -> Path: return traces_dir(run) / f"{name}.csv"
def results_path(run: Path) -> Path: return run / "results.json"
def manifest_path(run: Path) -> Path: return run / "manifest.json"
def logs_dir(run: Path) -> Path: return run / "logs"

# --- Bundled parameter files ---
def presets_dir() -> Path: return CFG.PRESETS_DIR
