# molcav/models/trace.py
"""
Trace: ordered (x, y) samples with axis metadata.

The universal I/O record for spectra and time series. Serializes to CSV
with a two-line header (column names, then units) and shortest
round-trip number formatting.
"""

from __future__ import annotations
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..errors import DomainError
from ..utils.common import read_table_csv, safe_float, write_table_csv

SIGMA_COLUMN = "sigma"


def _frozen_array(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float, copy=True).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Trace:
    """
    Ordered samples y(x).

    Attributes:
        x, y: Sample positions and values (read-only float arrays)
        x_label, x_unit, y_label, y_unit: Axis metadata
        columns: Extra numeric columns aligned with x, name -> (values, unit)
        tags: Constant string columns (e.g. {"model": "linear"})
    """
    x: np.ndarray
    y: np.ndarray
    x_label: str = "x"
    x_unit: str = ""
    y_label: str = "y"
    y_unit: str = ""
    columns: Mapping[str, Tuple[np.ndarray, str]] = field(default_factory=dict)
    tags: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        x = _frozen_array(self.x, "x")
        y = _frozen_array(self.y, "y")
        if x.size < 2:
            raise DomainError(f"trace needs at least 2 samples (got {x.size})")
        if x.size != y.size:
            raise DomainError(f"x and y lengths differ ({x.size} vs {y.size})")
        if not np.all(np.isfinite(x)):
            raise DomainError("trace x values must be finite")
        if not np.all(np.diff(x) > 0):
            raise DomainError(f"trace x ({self.x_label}) must be strictly increasing")

        columns: Dict[str, Tuple[np.ndarray, str]] = {}
        for name, (values, unit) in dict(self.columns).items():
            arr = _frozen_array(values, name)
            if arr.size != x.size:
                raise DomainError(f"column {name!r} has {arr.size} values, expected {x.size}")
            columns[name] = (arr, unit)

        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "columns", MappingProxyType(columns))
        object.__setattr__(self, "tags", MappingProxyType({str(k): str(v) for k, v in dict(self.tags).items()}))

    # -------------------------------------------------------------------------
    # Accessors
    # -------------------------------------------------------------------------

    def __len__(self) -> int:
        return int(self.x.size)

    @property
    def sigma(self) -> Optional[np.ndarray]:
        """Per-point standard deviations, when the trace carries them."""
        entry = self.columns.get(SIGMA_COLUMN)
        return entry[0] if entry is not None else None

    @property
    def step(self) -> float:
        """Mean sample spacing."""
        return float((self.x[-1] - self.x[0]) / (self.x.size - 1))

    def is_uniform(self, rtol: float = 1e-9) -> bool:
        dx = np.diff(self.x)
        return bool(np.all(np.abs(dx - dx.mean()) <= rtol * abs(dx.mean())))

    # -------------------------------------------------------------------------
    # Derivation
    # -------------------------------------------------------------------------

    def with_y(self, y, y_label: Optional[str] = None, y_unit: Optional[str] = None) -> "Trace":
        """Same grid, new values (extra columns are dropped)."""
        return Trace(
            self.x, y,
            x_label=self.x_label, x_unit=self.x_unit,
            y_label=y_label if y_label is not None else self.y_label,
            y_unit=y_unit if y_unit is not None else self.y_unit,
            tags=self.tags,
        )

    def with_tags(self, **tags: str) -> "Trace":
        return Trace(
            self.x, self.y, self.x_label, self.x_unit, self.y_label, self.y_unit,
            columns={k: v for k, v in self.columns.items()},
            tags={**self.tags, **tags},
        )

    def with_column(self, name: str, values, unit: str = "") -> "Trace":
        columns = {k: v for k, v in self.columns.items()}
        columns[name] = (values, unit)
        return Trace(
            self.x, self.y, self.x_label, self.x_unit, self.y_label, self.y_unit,
            columns=columns, tags=self.tags,
        )

    # -------------------------------------------------------------------------
    # CSV
    # -------------------------------------------------------------------------

    def write_csv(self, path: Path) -> Path:
        return write_traces_csv(path, [self])

    @classmethod
    def read_csv(cls, path: Path) -> "Trace":
        """
        Read the first two columns as x and y.

        A numeric column named "sigma" becomes per-point fit weights; other
        numeric columns are kept; text columns become tags when constant.
        """
        names, units, rows = read_table_csv(Path(path))
        if len(names) < 2:
            raise DomainError(f"{path}: need at least x and y columns")

        table = list(zip(*rows)) if rows else [[] for _ in names]
        x = [safe_float(v, float("nan")) for v in table[0]]
        y = [safe_float(v, float("nan")) for v in table[1]]
        if np.isnan(x).any() or np.isnan(y).any():
            raise DomainError(f"{path}: non-numeric x or y values")

        columns: Dict[str, Tuple[list, str]] = {}
        tags: Dict[str, str] = {}
        for name, unit, cells in zip(names[2:], units[2:], table[2:]):
            values = [safe_float(v, float("nan")) for v in cells]
            if not np.isnan(values).any():
                columns[name] = (values, unit)
            elif len(set(cells)) == 1:
                tags[name] = cells[0]

        return cls(
            x, y,
            x_label=names[0], x_unit=units[0],
            y_label=names[1], y_unit=units[1],
            columns=columns, tags=tags,
        )


def write_traces_csv(path: Path, traces: Sequence[Trace]) -> Path:
    """
    Write one or more traces into a single CSV.

    Traces are stacked row-wise; their tags become text columns, so two
    model variants of the same sweep can share a file and stay separable.
    All traces must share column names.
    """
    if not traces:
        raise ValueError("no traces to write")
    first = traces[0]
    extra = list(first.columns.keys())
    tag_names = list(first.tags.keys())

    names = [first.x_label, first.y_label, *extra, *tag_names]
    units = [first.x_unit, first.y_unit, *[first.columns[c][1] for c in extra], *[""] * len(tag_names)]

    rows = []
    for trace in traces:
        if list(trace.columns.keys()) != extra or list(trace.tags.keys()) != tag_names:
            raise ValueError("traces written to one CSV must share columns and tags")
        cols = [trace.columns[c][0] for c in extra]
        tag_values = [trace.tags[t] for t in tag_names]
        for i in range(len(trace)):
            rows.append([trace.x[i], trace.y[i], *[col[i] for col in cols], *tag_values])

    return write_table_csv(Path(path), names, units, rows)
