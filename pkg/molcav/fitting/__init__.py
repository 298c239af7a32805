# molcav/fitting/__init__.py
"""
Least-squares fitting of forward-model traces.

- optimizer: damped Gauss-Newton core and FitResult
- model_families: registry of model functions, Jacobians and start heuristics
- fits: fit front ends (family fits, decay with IRF, ensemble envelope)
"""

from .optimizer import FitResult, levenberg_marquardt
from .model_families import FitModel, get_all_families, get_family
from .fits import envelope_fit, fit, fit_decay_with_irf, fit_family, fit_lorentzian

__all__ = [
    "FitResult",
    "levenberg_marquardt",
    "FitModel",
    "get_all_families",
    "get_family",
    "envelope_fit",
    "fit",
    "fit_decay_with_irf",
    "fit_family",
    "fit_lorentzian",
]
