# molcav/scenarios/synthetic.py
"""
Synthetic measurement noise for scenarios that fit their own forward model.
"""

from __future__ import annotations
from typing import Optional

import numpy as np

from ..errors import require_non_negative
from ..models.trace import SIGMA_COLUMN, Trace


def with_noise(
    trace: Trace,
    fraction: float,
    rng: np.random.Generator,
    scale: Optional[float] = None,
) -> Trace:
    """
    Add Gaussian noise of standard deviation fraction x scale.

    scale defaults to the largest |y|. The standard deviation is stored in
    the sigma column so fits weight the points by it. fraction = 0 returns
    the trace unchanged.
    """
    require_non_negative("noise fraction", fraction)
    if fraction == 0.0:
        return trace
    ref = float(np.max(np.abs(trace.y))) if scale is None else float(scale)
    sd = fraction * (ref if ref > 0 else 1.0)
    noisy = trace.y + rng.normal(0.0, sd, size=len(trace))
    return trace.with_y(noisy).with_column(SIGMA_COLUMN, np.full(len(trace), sd), trace.y_unit)
