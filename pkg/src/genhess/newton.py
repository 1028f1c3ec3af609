"""Regularized generalized Newton method for minimizing ``f``.

Each step solves ``(A^T D_-(x) A + delta I) d = -grad f(x)`` by Cholesky and
backtracks along ``d`` until the Armijo condition holds. ``D_+`` can be
selected instead through :class:`NewtonConfig`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .problem import LinearSystem, Side, classify_indices, d_matrix, eval_f, eval_grad


class SolveStatus(enum.Enum):
    CONVERGED = "converged"
    MAX_ITER = "max_iter"
    STALLED = "stalled"


@dataclass(frozen=True)
class NewtonConfig:
    delta: float | None = None
    grad_tol: float = 1e-10
    max_iter: int = 100
    armijo_slope: float = 1e-4
    backtrack: float = 0.5
    min_step: float = 1e-16
    side: Side = Side.MINUS


@dataclass(eq=False)
class SolveTrace:
    iterates: list[tuple[np.ndarray, float, float]] = field(default_factory=list)
    status: SolveStatus = SolveStatus.MAX_ITER
    delta: float = 0.0
    armijo_slope: float = 1e-4
    backtrack: float = 0.5
    message: str = ""

    @property
    def x(self) -> np.ndarray:
        return self.iterates[-1][0]

    @property
    def f(self) -> float:
        return self.iterates[-1][1]

    @property
    def iterations(self) -> int:
        return len(self.iterates) - 1


def default_delta(sys: LinearSystem) -> float:
    # Row-sum bound on the spectral norm of A^T A.
    return 1e-8 * (1.0 + float(np.abs(sys.A.T @ sys.A).sum(axis=1).max()))


def solve(sys: LinearSystem, x0, config: NewtonConfig | None = None, **overrides) -> SolveTrace:
    cfg = config or NewtonConfig()
    if overrides:
        cfg = NewtonConfig(**{**cfg.__dict__, **overrides})
    delta = cfg.delta if cfg.delta is not None else default_delta(sys)
    if not delta > 0:
        raise ValueError("delta must be positive")

    x = sys.check_point(x0).copy()
    fx = eval_f(sys, x)
    g = eval_grad(sys, x)
    trace = SolveTrace([(x.copy(), fx, float(np.linalg.norm(g)))], delta=delta,
                       armijo_slope=cfg.armijo_slope, backtrack=cfg.backtrack)
    eye = np.eye(sys.n)

    for _ in range(cfg.max_iter + 1):
        gnorm = float(np.linalg.norm(g))
        if gnorm <= cfg.grad_tol:
            trace.status = SolveStatus.CONVERGED
            return trace
        if len(trace.iterates) > cfg.max_iter:
            trace.status = SolveStatus.MAX_ITER
            return trace
        H = d_matrix(sys, classify_indices(sys, x), cfg.side).matrix + delta * eye
        try:
            d = -cho_solve(cho_factor(H), g)
        except LinAlgError as exc:
            trace.status = SolveStatus.STALLED
            trace.message = f"factorization failed: {exc}"
            return trace
        slope = float(g @ d)
        if not np.all(np.isfinite(d)) or slope >= 0:
            trace.status = SolveStatus.STALLED
            trace.message = "no descent direction"
            return trace
        t = 1.0
        while True:
            xn = x + t * d
            fn = eval_f(sys, xn)
            if np.isfinite(fn) and fn <= fx + cfg.armijo_slope * t * slope:
                break
            t *= cfg.backtrack
            if t < cfg.min_step:
                trace.status = SolveStatus.STALLED
                trace.message = "line search failed"
                return trace
        if fn >= fx and np.linalg.norm(xn - x) <= cfg.min_step * (1.0 + np.linalg.norm(x)):
            trace.status = SolveStatus.STALLED
            trace.message = "step stagnated"
            return trace
        x, fx = xn, fn
        g = eval_grad(sys, x)
        trace.iterates.append((x.copy(), fx, float(np.linalg.norm(g))))
    return trace
