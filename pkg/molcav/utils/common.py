# molcav/utils/common.py
"""
Common utility functions used across the codebase.
Number formatting and the CSV/JSON writers behind every run artifact.
"""

from __future__ import annotations
import csv
import json
from pathlib import Path
from typing import Any, Dict, List, Mapping, Sequence, Tuple

import numpy as np

from .log import setup_logger

log = setup_logger("utils.common")


# =============================================================================
# Safe Type Conversions
# =============================================================================

def safe_float(value: Any, default: float = 0.0) -> float:
    """
    Safely convert a value to float with a default fallback.

    Handles None, empty strings, and invalid values gracefully.

    Examples:
        >>> safe_float("3.14")
        3.14
        >>> safe_float("", 0.0)
        0.0
        >>> safe_float(None, -1.0)
        -1.0
    """
    if value in ("", None):
        return default
    try:
        return float(value)
    except (ValueError, TypeError):
        return default


# =============================================================================
# Number Formatting
# =============================================================================

def format_number(value: Any) -> str:
    """
    Shortest round-trip text for a number; other values pass through str().

    Examples:
        >>> format_number(0.1)
        '0.1'
        >>> format_number(np.float64(1e-12))
        '1e-12'
    """
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def to_builtin(value: Any) -> Any:
    """Convert numpy scalars/arrays and Paths into JSON-friendly builtins."""
    if isinstance(value, Mapping):
        return {str(k): to_builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_builtin(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_builtin(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, Path):
        return str(value)
    return value


# =============================================================================
# CSV Utilities
# =============================================================================

def write_table_csv(
    path: Path,
    names: Sequence[str],
    units: Sequence[str],
    rows: Sequence[Sequence[Any]],
) -> Path:
    """
    Write a table with a two-line header (column names, then units).

    Numbers are written with format_number so files round-trip exactly.
    I/O errors propagate to the caller.

    Args:
        path: Output CSV path (parent directories are created)
        names: Column names
        units: Column units ("" for dimensionless or text columns)
        rows: Row values

    Returns:
        The written path
    """
    if len(names) != len(units):
        raise ValueError(f"{len(names)} column names but {len(units)} units")

    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(names)
        writer.writerow(units)
        for row in rows:
            writer.writerow([format_number(v) for v in row])

    log.debug(f"[common] Wrote {len(rows)} rows to {path}")
    return path


def read_table_csv(path: Path) -> Tuple[List[str], List[str], List[List[str]]]:
    """
    Read a two-line-header CSV written by write_table_csv.

    Returns:
        (names, units, rows) with row cells left as strings
    """
    with path.open(encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        try:
            names = next(reader)
            units = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: missing two-line header") from None
        rows = [row for row in reader if row]
    return names, units, rows


# =============================================================================
# JSON Utilities
# =============================================================================

def write_json(path: Path, data: Mapping[str, Any]) -> Path:
    """Write a mapping as sorted, indented JSON (deterministic bytes)."""
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(to_builtin(data), indent=2, sort_keys=True, allow_nan=True)
    path.write_text(text + "\n", encoding="utf-8")
    return path


def read_json(path: Path) -> Dict[str, Any]:
    """Read a JSON object from disk."""
    with path.open(encoding="utf-8") as f:
        data = json.load(f)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a JSON object, got {type(data).__name__}")
    return data
