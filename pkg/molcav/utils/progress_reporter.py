# molcav/utils/progress_reporter.py
"""
Progress reporting for scenario runs.

The ScenarioExecutor installs one callback per run; scenario and physics
code report stages or iterate with progress_iter. Without a callback both
are no-ops, so library calls outside a run stay silent.
"""

from __future__ import annotations
from typing import Callable, Iterable, Iterator, Optional, TypeVar

ProgressCallback = Callable[[int, int, str], None]
T = TypeVar("T")

# Emit at most once per bracket of this many percent
BRACKET_PERCENT = 5

_progress_callback: Optional[ProgressCallback] = None


def set_progress_callback(callback: Optional[ProgressCallback]) -> None:
    """Install (or with None, remove) the process-wide progress callback."""
    global _progress_callback
    _progress_callback = callback


def report_progress(current: int, total: int, message: str = "") -> None:
    """
    Report one stage of a multi-stage computation.

    Usage:
        report_progress(1, 3, "Ensemble spectrum, cavity locked")
    """
    if _progress_callback is not None:
        _progress_callback(current, total, message)


def progress_iter(items: Iterable[T], desc: str = "", unit: str = "it",
                  total: Optional[int] = None) -> Iterator[T]:
    """
    Yield from items, reporting "desc: i/n unit" at each new 5 % bracket.

    total defaults to len(items); iterables without a length and no total
    are passed through unreported.
    """
    callback = _progress_callback
    if total is None:
        total = len(items) if hasattr(items, "__len__") else 0
    if callback is None or total <= 0:
        yield from items
        return

    callback(0, total, f"{desc}: starting...")
    last_bracket = -1
    done = 0
    for item in items:
        yield item
        done += 1
        bracket = (100 * done // total) // BRACKET_PERCENT
        if bracket > last_bracket or done == total:
            last_bracket = bracket
            callback(done, total, f"{desc}: {done}/{total} {unit}")
    callback(total, total, f"{desc} complete")
