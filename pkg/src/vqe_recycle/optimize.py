"""COBYLA minimization with a hard evaluation budget and per-call tracing.

The trust-region iteration is delegated to scipy's COBYLA (Powell's
linear-approximation method, used unconstrained here); this wrapper owns
the evaluation ledger: every objective call lands in the trace, the best
evaluated point is tracked independently of the solver's bookkeeping, and
the budget is enforced even if the solver would overshoot.

A budget below dim+2 is allowed: the solver then stops inside the initial
simplex construction and the best point seen so far is returned.  The
accelerated training mode relies on exactly this behavior.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize as _scipy_minimize

BUDGET_EXHAUSTED = "budget_exhausted"
TRUST_REGION_CONVERGED = "trust_region_converged"


@dataclass(frozen=True)
class OptimizerConfig:
    """Trust-region radii (radians) and objective-evaluation budget."""

    rhobeg: float = 1.0
    rhoend: float = 1e-4
    max_evals: int = 1000

    def __post_init__(self):
        if not 0.0 < self.rhoend < self.rhobeg:
            raise ValueError(
                f"need 0 < rhoend < rhobeg, got rhoend={self.rhoend}, rhobeg={self.rhobeg}"
            )
        if self.max_evals < 1:
            raise ValueError(f"max_evals must be >= 1, got {self.max_evals}")


@dataclass
class OptimizeResult:
    best_x: np.ndarray
    best_f: float
    evals_used: int
    trace: np.ndarray  # objective value of evaluation k at trace[k]
    termination: str


class NonFiniteObjectiveError(RuntimeError):
    """The objective returned nan/inf; carries the trace up to the bad call."""

    def __init__(self, x: np.ndarray, value: float, trace: list[float]):
        super().__init__(f"objective returned non-finite value {value!r} at x={x!r}")
        self.x = np.array(x)
        self.value = value
        self.trace = np.array(trace)


class _BudgetStop(Exception):
    pass


def minimize(f, x0, cfg: OptimizerConfig) -> OptimizeResult:
    """Minimize ``f`` from ``x0`` under ``cfg``.

    Deterministic: COBYLA uses no randomness, so identical inputs give an
    identical trace.  ``best_x`` is the argmin over every evaluated point,
    which may differ from the solver's final iterate.
    """
    x0 = np.asarray(x0, dtype=np.float64)
    if x0.ndim != 1 or x0.size < 1:
        raise ValueError(f"x0 must be a 1-D vector, got shape {x0.shape}")

    trace: list[float] = []
    best_x = x0.copy()
    best_f = np.inf

    def wrapped(x: np.ndarray) -> float:
        nonlocal best_x, best_f
        if len(trace) >= cfg.max_evals:
            raise _BudgetStop()
        value = float(f(x))
        if not np.isfinite(value):
            raise NonFiniteObjectiveError(x, value, trace)
        trace.append(value)
        if value < best_f:
            best_f = value
            best_x = np.array(x, dtype=np.float64)
        return value

    hit_budget = False
    try:
        _scipy_minimize(
            wrapped,
            x0,
            method="COBYLA",
            tol=cfg.rhoend,
            options={"rhobeg": cfg.rhobeg, "maxiter": cfg.max_evals},
        )
    except _BudgetStop:
        hit_budget = True

    evals_used = len(trace)
    termination = (
        BUDGET_EXHAUSTED
        if hit_budget or evals_used >= cfg.max_evals
        else TRUST_REGION_CONVERGED
    )
    return OptimizeResult(
        best_x=best_x,
        best_f=best_f,
        evals_used=evals_used,
        trace=np.array(trace),
        termination=termination,
    )
