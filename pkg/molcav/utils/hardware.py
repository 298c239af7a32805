# molcav/utils/hardware.py
"""
CPU detection for sizing the scenario worker pool.
"""

from __future__ import annotations
import os
import platform
from functools import lru_cache

from .log import setup_logger

log = setup_logger("utils.hardware")


@lru_cache(maxsize=1)
def get_cpu_count() -> int:
    """Number of CPU cores (4 when the platform does not say)."""
    return os.cpu_count() or 4


def get_worker_count(task_type: str = "cpu") -> int:
    """
    Pool size for a kind of work.

    Args:
        task_type:
            'cpu' - scenario batches (numpy kernels, fits); keeps two cores free
            'io'  - writing traces and manifests

    Raises:
        ValueError: unknown task type
    """
    cores = get_cpu_count()
    if task_type == "cpu":
        return max(2, cores - 2)
    if task_type == "io":
        return max(4, min(16, cores))
    raise ValueError(f"Unknown task type: {task_type}. Available: ['cpu', 'io']")


def resolve_jobs(requested: int, task_count: int) -> int:
    """
    Turn a --jobs value into a pool size in [1, task_count].

    requested <= 0 derives the size from the CPU count.
    """
    workers = requested if requested > 0 else get_worker_count("cpu")
    return max(1, min(workers, task_count))


def log_system_info() -> None:
    """Log platform and pool size once per batch."""
    log.info(
        f"[hw] {platform.system()} {platform.machine()}, Python {platform.python_version()}, "
        f"{get_cpu_count()} cores, {get_worker_count('cpu')} scenario workers"
    )
