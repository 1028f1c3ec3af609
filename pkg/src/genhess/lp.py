"""Small dense LP kernel: two-phase tableau simplex.

Problems handled here are tiny (tens of rows and columns), so a plain
tableau is fast enough and gives exact vertex certificates. Pivoting uses
Dantzig's rule until the first degenerate pivot, then Bland's rule for the
rest of the solve, which rules out cycling.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

FEAS_TOL = 1e-8
STRICT_TOL = 1e-7
HULL_TOL = 1e-7

_PIVOT_TOL = 1e-11
_COST_TOL = 1e-10
_DEGENERATE = 1e-12


class LPStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True, eq=False)
class LPOutcome:
    status: LPStatus
    primal: np.ndarray | None = None
    objective: float | None = None
    # Phase-one optimum: sum of artificial values on the normalized rows.
    infeasibility: float = 0.0


@dataclass(frozen=True, eq=False)
class StrictFeasibility:
    feasible: bool
    y: np.ndarray | None
    margin: float


@dataclass(frozen=True, eq=False)
class HullMembership:
    member: bool
    weights: np.ndarray | None
    extremes_count: int
    gap: float


def _pivot(T: np.ndarray, z: np.ndarray, basis: list[int], r: int, j: int) -> None:
    T[r] /= T[r, j]
    col = T[:, j].copy()
    col[r] = 0.0
    T -= np.outer(col, T[r])
    z -= z[j] * T[r]
    basis[r] = j


def _iterate(T, z, basis, ncols, max_iter):
    """Minimize over columns ``[:ncols]``. Returns ``"optimal"`` or ``"unbounded"``."""
    bland = False
    for _ in range(max_iter):
        zc = z[:ncols]
        if bland:
            cand = np.flatnonzero(zc < -_COST_TOL)
            if cand.size == 0:
                return "optimal"
            j = int(cand[0])
        else:
            j = int(np.argmin(zc))
            if zc[j] >= -_COST_TOL:
                return "optimal"
        col = T[:, j]
        rows = np.flatnonzero(col > _PIVOT_TOL)
        if rows.size == 0:
            return "unbounded"
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        ties = rows[ratios <= best + _DEGENERATE * max(1.0, abs(best))]
        r = int(min(ties, key=lambda k: basis[k]))
        if best <= _DEGENERATE:
            bland = True
        _pivot(T, z, basis, r, j)
        np.maximum(T[:, -1], 0.0, out=T[:, -1])
    raise RuntimeError(f"simplex did not terminate within {max_iter} pivots")


def _solve_standard(A, b, c, slack_basis, feas_tol):
    """Solve ``min c.x  s.t.  A x = b, x >= 0`` with ``b >= 0``.

    ``slack_basis[r]`` is a column that can start in the basis for row ``r``
    (a +1 slack), or -1 if the row needs an artificial variable.
    Returns ``(status, x, phase_one_gap)``.
    """
    m, N = A.shape
    art_rows = [r for r in range(m) if slack_basis[r] < 0]
    na = len(art_rows)
    T = np.zeros((m, N + na + 1))
    T[:, :N] = A
    T[:, -1] = b
    basis = list(slack_basis)
    for k, r in enumerate(art_rows):
        T[r, N + k] = 1.0
        basis[r] = N + k
    max_iter = 50 * (m + N + na) + 100

    gap = 0.0
    if na:
        z = np.zeros(N + na + 1)
        z[N : N + na] = 1.0
        for r in art_rows:
            z -= T[r]
        _iterate(T, z, basis, N + na, max_iter)
        gap = max(0.0, -z[-1])
        if gap > feas_tol:
            return LPStatus.INFEASIBLE, None, gap
        # Drive zero-level artificials out of the basis; drop redundant rows.
        keep = []
        for r in range(m):
            if basis[r] >= N:
                cand = np.flatnonzero(np.abs(T[r, :N]) > 1e-9)
                if cand.size == 0:
                    continue
                _pivot(T, z, basis, r, int(cand[np.argmax(np.abs(T[r, cand]))]))
                np.maximum(T[:, -1], 0.0, out=T[:, -1])
            keep.append(r)
        T = np.hstack([T[keep, :N], T[keep, -1:]])
        basis = [basis[r] for r in keep]

    z = np.zeros(N + 1)
    z[:N] = c
    for r, j in enumerate(basis):
        if z[j] != 0.0:
            z -= z[j] * T[r]
    status = _iterate(T, z, basis, N, max_iter)
    if status == "unbounded":
        return LPStatus.UNBOUNDED, None, gap
    x = np.zeros(N)
    for r, j in enumerate(basis):
        x[j] = T[r, -1]
    return LPStatus.OPTIMAL, x, gap


def solve_lp_arrays(
    c,
    A_ub=None,
    b_ub=None,
    A_eq=None,
    b_eq=None,
    *,
    nonneg=False,
    maximize: bool = False,
    normalize: bool = True,
    feas_tol: float = FEAS_TOL,
) -> LPOutcome:
    """Array form of :func:`solve_lp`.

    ``nonneg`` is a bool or a boolean mask; variables not marked nonnegative
    are free and get split internally.
    """
    c = np.asarray(c, dtype=float)
    if c.ndim != 1:
        raise ValueError("objective must be a vector")
    nv = c.shape[0]

    def block(M, v, name):
        if M is None:
            return np.zeros((0, nv)), np.zeros(0)
        M = np.asarray(M, dtype=float).reshape(-1, nv) if np.size(M) else np.zeros((0, nv))
        v = np.asarray(v, dtype=float).reshape(-1)
        if M.shape[0] != v.shape[0]:
            raise ValueError(f"{name}: {M.shape[0]} rows but {v.shape[0]} right-hand sides")
        return M, v

    A_ub, b_ub = block(A_ub, b_ub, "inequalities")
    A_eq, b_eq = block(A_eq, b_eq, "equalities")
    for arr in (c, A_ub, b_ub, A_eq, b_eq):
        if not np.all(np.isfinite(arr)):
            raise ValueError("LP data must be finite")

    mask = np.broadcast_to(np.asarray(nonneg, dtype=bool), (nv,))
    free = np.flatnonzero(~mask)
    sign = -1.0 if maximize else 1.0

    # Columns: original vars, negative parts of free vars, inequality slacks.
    p, q = A_ub.shape[0], A_eq.shape[0]
    nf = free.size
    N = nv + nf + p
    A = np.zeros((p + q, N))
    A[:p, :nv] = A_ub
    A[p:, :nv] = A_eq
    A[:, nv : nv + nf] = -A[:, free]
    A[np.arange(p), nv + nf + np.arange(p)] = 1.0
    b = np.concatenate([b_ub, b_eq])
    cost = np.zeros(N)
    cost[:nv] = sign * c
    cost[nv : nv + nf] = -sign * c[free]

    if normalize:
        scale = np.abs(A[:, : nv + nf]).max(axis=1) if N else np.zeros(p + q)
        zero = scale == 0.0
        if np.any(b[zero & (np.arange(p + q) < p)] < -feas_tol) or np.any(
            np.abs(b[zero & (np.arange(p + q) >= p)]) > feas_tol
        ):
            return LPOutcome(LPStatus.INFEASIBLE, infeasibility=float("inf"))
        scale[zero] = 1.0
        A /= scale[:, None]
        # Slack columns keep their unit coefficient.
        A[np.arange(p), nv + nf + np.arange(p)] = 1.0
        b = b / scale

    slack_basis = [-1] * (p + q)
    for r in range(p):
        if b[r] >= 0:
            slack_basis[r] = nv + nf + r
    neg = b < 0
    A[neg] *= -1.0
    b = np.abs(b)

    status, x, gap = _solve_standard(A, b, cost, slack_basis, feas_tol)
    if status is not LPStatus.OPTIMAL:
        return LPOutcome(status, infeasibility=gap)
    primal = x[:nv].copy()
    primal[free] -= x[nv : nv + nf]
    return LPOutcome(LPStatus.OPTIMAL, primal, float(c @ primal), gap)


def solve_lp(c, rows: Sequence[tuple], maximize: bool = False, nonneg=False) -> LPOutcome:
    """Solve an LP given as ``(coef, relation, rhs)`` rows.

    ``relation`` is ``"<="``, ``">="`` or ``"="``. Variables are free unless
    ``nonneg`` says otherwise.

    >>> solve_lp([1.0], [([1.0], "<=", 1.0)], maximize=True).objective
    1.0
    """
    c = np.asarray(c, dtype=float)
    ub, ubr, eq, eqr = [], [], [], []
    for coef, rel, rhs in rows:
        coef = np.asarray(coef, dtype=float)
        if coef.shape != c.shape:
            raise ValueError(f"row has {coef.shape[0] if coef.ndim else 0} coefficients, expected {c.shape[0]}")
        if rel in ("<=", "≤"):
            ub.append(coef)
            ubr.append(rhs)
        elif rel in (">=", "≥"):
            ub.append(-coef)
            ubr.append(-rhs)
        elif rel in ("=", "=="):
            eq.append(coef)
            eqr.append(rhs)
        else:
            raise ValueError(f"unknown relation {rel!r}")
    return solve_lp_arrays(
        c,
        np.array(ub) if ub else None,
        np.array(ubr) if ub else None,
        np.array(eq) if eq else None,
        np.array(eqr) if eq else None,
        nonneg=nonneg,
        maximize=maximize,
    )


def strict_feasibility(vectors, signs, strict_tol: float = STRICT_TOL) -> StrictFeasibility:
    """Look for ``y`` with ``signs[i] * <a_i, y> > 0`` for every row.

    Maximizes the margin ``t`` over ``||y||_inf <= 1`` with rows scaled to
    unit length (``t`` is capped at 1 to keep the LP bounded). Feasible iff
    the optimal margin reaches ``strict_tol``.
    """
    V = np.asarray(vectors, dtype=float)
    s = np.asarray(signs, dtype=float)
    if V.ndim != 2:
        raise ValueError("vectors must be a 2-D array")
    k, n = V.shape
    if s.shape != (k,):
        raise ValueError(f"expected {k} signs, got shape {s.shape}")
    if k == 0:
        return StrictFeasibility(True, np.zeros(n), float("inf"))
    norms = np.linalg.norm(V, axis=1)
    if np.any(norms == 0.0):
        raise ValueError("zero vectors admit no strict sign")
    U = (s[:, None] * V) / norms[:, None]

    # Variables (y, t) with y free, t >= 0 (t = 0 is always attainable at y = 0).
    A_ub = np.zeros((k + 2 * n + 1, n + 1))
    A_ub[:k, :n] = -U
    A_ub[:k, n] = 1.0
    A_ub[k : k + n, :n] = np.eye(n)
    A_ub[k + n : k + 2 * n, :n] = -np.eye(n)
    A_ub[-1, n] = 1.0
    b_ub = np.zeros(k + 2 * n + 1)
    b_ub[k:] = 1.0
    c = np.zeros(n + 1)
    c[n] = 1.0
    mask = np.zeros(n + 1, dtype=bool)
    mask[n] = True
    out = solve_lp_arrays(c, A_ub, b_ub, nonneg=mask, maximize=True)
    if out.status is not LPStatus.OPTIMAL:
        raise RuntimeError(f"margin LP ended as {out.status.value}")
    y = np.clip(out.primal[:n], -1.0, 1.0)
    margin = float((U @ y).min())
    if margin >= strict_tol:
        return StrictFeasibility(True, y, margin)
    return StrictFeasibility(False, None, margin)


def _upper(M: np.ndarray) -> np.ndarray:
    return M[np.triu_indices(M.shape[0])]


def hull_membership(extremes, target, tol: float = HULL_TOL) -> HullMembership:
    """Decide whether ``target`` lies in the convex hull of ``extremes``.

    Solves the phase-one problem ``sum_k a_k E_k = T, sum_k a_k = 1, a >= 0``
    on upper triangles. Data are divided by a common scale first, so the
    verdict is invariant under positive rescaling of all matrices.
    """
    E = [np.asarray(M, dtype=float) for M in extremes]
    T = np.asarray(target, dtype=float)
    if not E:
        raise ValueError("need at least one extreme matrix")
    n = T.shape[0]
    if T.shape != (n, n) or any(M.shape != (n, n) for M in E):
        raise ValueError("all matrices must be square with the same dimension")
    K = len(E)

    for k, M in enumerate(E):
        if np.linalg.norm(M - T) <= 1e-12 * (1.0 + np.linalg.norm(T)):
            w = np.zeros(K)
            w[k] = 1.0
            return HullMembership(True, w, K, 0.0)

    scale = max(max(np.abs(M).max() for M in E), np.abs(T).max())
    if scale == 0.0:
        scale = 1.0
    cols = np.array([_upper(M) / scale for M in E]).T
    t = _upper(T) / scale
    A_eq = np.vstack([cols, np.ones((1, K))])
    b_eq = np.concatenate([t, [1.0]])
    threshold = tol * (1.0 + np.linalg.norm(T) / scale)
    out = solve_lp_arrays(
        np.zeros(K), A_eq=A_eq, b_eq=b_eq, nonneg=True, normalize=False, feas_tol=threshold
    )
    if out.status is not LPStatus.OPTIMAL:
        return HullMembership(False, None, K, out.infeasibility)
    w = np.maximum(out.primal, 0.0)
    w /= w.sum()
    return HullMembership(True, w, K, out.infeasibility)
