# molcav/fitting/optimizer.py
"""
Damped Gauss-Newton (Levenberg-Marquardt) least squares with box bounds.

Each iteration solves (J^T J + lambda diag(J^T J)) delta = -J^T r. A step
that lowers the cost is accepted and lambda is divided by FIT_LAMBDA_DOWN;
otherwise lambda is multiplied by FIT_LAMBDA_UP and the step retried.
Bounds are honoured by clipping the trial point. Failure to converge is
reported on the result, never raised.
"""

from __future__ import annotations
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve, pinv

from ..config import DEFAULT_CONFIG as CFG
from ..errors import DomainError
from ..utils.log import setup_logger

log = setup_logger("fitting.optimizer")

ModelFn = Callable[[np.ndarray, np.ndarray], np.ndarray]
JacobianFn = Callable[[np.ndarray, np.ndarray], np.ndarray]

# Cost below this fraction of sum(y^2) counts as an exact fit
EXACT_FIT_RTOL = 1e-28
# Central-difference step relative to the parameter scale
FD_REL_STEP = 6e-6


@dataclass
class FitResult:
    """
    Outcome of a least-squares fit.

    Attributes:
        model: Family name
        parameter_names: Order of values and stderr
        values: Best-fit parameters
        stderr: Standard errors from s^2 (J^T J)^-1 at the optimum
        residual_sum_squares: Weighted RSS at the optimum
        converged: Whether a convergence test was met
        iterations: Outer iterations performed
        gradient_norm: Scaled gradient measure at the optimum
        message: Reason for stopping
        cost_history: RSS after every accepted step, starting with the initial cost
    """
    model: str
    parameter_names: List[str]
    values: np.ndarray
    stderr: np.ndarray
    residual_sum_squares: float
    converged: bool
    iterations: int
    gradient_norm: float
    message: str = ""
    cost_history: List[float] = field(default_factory=list)

    def _index(self, name: str) -> int:
        if name not in self.parameter_names:
            raise KeyError(f"{self.model} has no parameter {name!r}; parameters: {self.parameter_names}")
        return self.parameter_names.index(name)

    def value(self, name: str) -> float:
        return float(self.values[self._index(name)])

    def error(self, name: str) -> float:
        return float(self.stderr[self._index(name)])

    def as_dict(self, prefix: str = "") -> Dict[str, object]:
        """Flat key-value form for results files."""
        out: Dict[str, object] = {}
        for name, value, err in zip(self.parameter_names, self.values, self.stderr):
            out[f"{prefix}{name}"] = float(value)
            out[f"{prefix}{name}_stderr"] = float(err)
        out[f"{prefix}converged"] = bool(self.converged)
        out[f"{prefix}iterations"] = int(self.iterations)
        out[f"{prefix}rss"] = float(self.residual_sum_squares)
        return out

    def summary_line(self) -> str:
        pairs = ", ".join(
            f"{n} = {v:.6g} ± {e:.2g}"
            for n, v, e in zip(self.parameter_names, self.values, self.stderr)
        )
        flag = "" if self.converged else f" [not converged: {self.message}]"
        return f"{self.model}: {pairs}{flag}"


# =============================================================================
# Jacobian
# =============================================================================

def finite_difference_jacobian(
    model: ModelFn,
    x: np.ndarray,
    p: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    scale: np.ndarray,
) -> np.ndarray:
    """Central differences, one-sided where a bound is within one step."""
    jac = np.empty((x.size, p.size))
    for j in range(p.size):
        h = FD_REL_STEP * max(abs(p[j]), scale[j])
        up, down = p.copy(), p.copy()
        if p[j] + h > upper[j]:
            down[j] -= h
            jac[:, j] = (model(x, p) - model(x, down)) / h
        elif p[j] - h < lower[j]:
            up[j] += h
            jac[:, j] = (model(x, up) - model(x, p)) / h
        else:
            up[j] += h
            down[j] -= h
            jac[:, j] = (model(x, up) - model(x, down)) / (2.0 * h)
    return jac


def gradient_measure(jac: np.ndarray, resid: np.ndarray) -> float:
    """Largest |cosine| between the residual and a Jacobian column."""
    rnorm = float(np.linalg.norm(resid))
    if rnorm == 0.0:
        return 0.0
    cols = np.linalg.norm(jac, axis=0)
    g = np.abs(jac.T @ resid)
    with np.errstate(divide="ignore", invalid="ignore"):
        cos = np.where(cols > 0, g / (cols * rnorm), 0.0)
    return float(np.max(cos))


def _solve_damped(a: np.ndarray, g: np.ndarray, lam: float) -> Optional[np.ndarray]:
    d = np.diag(a).copy()
    d[d <= 0] = 1.0
    try:
        factor = cho_factor(a + lam * np.diag(d))
    except LinAlgError:
        return None
    return -cho_solve(factor, g)


# =============================================================================
# Optimizer
# =============================================================================

def levenberg_marquardt(
    model: ModelFn,
    x: np.ndarray,
    y: np.ndarray,
    initial: Sequence[float],
    lower: Sequence[float],
    upper: Sequence[float],
    *,
    jacobian: Optional[JacobianFn] = None,
    sigma: Optional[np.ndarray] = None,
    name: str = "model",
    parameter_names: Optional[Sequence[str]] = None,
    max_iter: Optional[int] = None,
) -> FitResult:
    """
    Minimize sum(((model(x, p) - y) / sigma)^2) within lower <= p <= upper.

    Raises:
        DomainError: fewer than len(p) + 2 data points, or non-positive sigma
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    p = np.clip(np.asarray(initial, dtype=float), lower, upper)
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    names = list(parameter_names) if parameter_names is not None else [f"p{i}" for i in range(p.size)]
    n, k = y.size, p.size
    if n < k + 2:
        raise DomainError(f"{name} fit needs >= {k + 2} data points (got {n})")

    w = np.ones(n)
    if sigma is not None:
        sigma = np.asarray(sigma, dtype=float)
        if sigma.shape != y.shape or np.any(~(sigma > 0)):
            raise DomainError("per-point sigma must be positive and match the data length")
        w = 1.0 / sigma

    scale = np.where(np.abs(p) > 0, np.abs(p), 1.0)

    def residual(params: np.ndarray) -> np.ndarray:
        return (model(x, params) - y) * w

    def jac_at(params: np.ndarray) -> np.ndarray:
        if jacobian is not None:
            return jacobian(x, params) * w[:, None]
        return finite_difference_jacobian(model, x, params, lower, upper, scale) * w[:, None]

    max_iter = CFG.FIT_MAX_ITER if max_iter is None else max_iter
    exact = EXACT_FIT_RTOL * float(np.sum((y * w) ** 2))
    lam = CFG.FIT_LAMBDA_INIT

    r = residual(p)
    cost = float(r @ r)
    history = [cost]
    converged = False
    message = f"iteration limit {max_iter} reached"
    gnorm = float("nan")
    jac = jac_at(p)
    iterations = 0

    for iterations in range(1, max_iter + 1):
        gnorm = gradient_measure(jac, r)
        if cost <= exact:
            converged, message = True, "exact fit"
            break
        if gnorm <= CFG.FIT_GTOL:
            converged, message = True, "gradient below tolerance"
            break

        a = jac.T @ jac
        g = jac.T @ r
        accepted = False
        while lam <= CFG.FIT_LAMBDA_MAX:
            step = _solve_damped(a, g, lam)
            if step is None:
                lam *= CFG.FIT_LAMBDA_UP
                continue
            trial = np.clip(p + step, lower, upper)
            r_trial = residual(trial)
            cost_trial = float(r_trial @ r_trial)
            if np.isfinite(cost_trial) and cost_trial < cost:
                accepted = True
                break
            lam *= CFG.FIT_LAMBDA_UP

        if not accepted:
            message = "damping exceeded its limit without lowering the cost"
            break

        rel = (cost - cost_trial) / cost
        p, r, cost = trial, r_trial, cost_trial
        history.append(cost)
        lam = max(lam / CFG.FIT_LAMBDA_DOWN, 1e-15)
        jac = jac_at(p)
        if rel < CFG.FIT_FTOL:
            gnorm = gradient_measure(jac, r)
            converged, message = True, "relative cost change below tolerance"
            break

    stderr = _standard_errors(jac, cost, n, k)
    result = FitResult(
        model=name,
        parameter_names=names,
        values=p,
        stderr=stderr,
        residual_sum_squares=cost,
        converged=converged,
        iterations=iterations,
        gradient_norm=gnorm,
        message=message,
        cost_history=history,
    )
    log.debug(f"[optimizer] {result.summary_line()} ({message}, {iterations} iterations)")
    return result


def _standard_errors(jac: np.ndarray, cost: float, n: int, k: int) -> np.ndarray:
    s2 = cost / (n - k)
    cov = s2 * pinv(jac.T @ jac)
    return np.sqrt(np.clip(np.diag(cov), 0.0, None))
