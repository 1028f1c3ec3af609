"""Exact generalized Hessian of ``f(x) = 0.5 * ||(Ax - b)_+||^2``.

Near ``x`` the gradient is piecewise linear, one linear piece per
full-dimensional cell of the central arrangement ``{<A_i, y> = 0 : i in I0}``.
On a cell with strict signs ``sigma`` the Hessian is ``A^T diag(v) A`` with
``v = 1`` on ``I+`` and on ``{i in I0 : sigma_i = +}``. The generalized
Hessian is the convex hull of these limiting Hessians, which is what
:func:`limiting_hessians` returns. The remaining functions compare it with
the interval set ``A^T diag((Ax - b)_*) A`` and with ``A^T D_pm(x) A``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np
from scipy.linalg import qr

from .lp import STRICT_TOL, HullMembership, hull_membership, strict_feasibility, solve_lp_arrays, LPStatus
from .problem import (
    ActivityPartition,
    CandidateHessian,
    LinearSystem,
    Side,
    base_pattern,
    candidate_from_binary,
    classify_indices,
    d_matrix,
    weighted_gram,
)

DEFAULT_MAX_ACTIVE = 20
DEDUP_TOL = 1e-10
RANK_TOL = 1e-10


class ActiveSetTooLarge(RuntimeError):
    def __init__(self, count: int, cap: int):
        super().__init__(
            f"{count} active constraints exceed the enumeration cap {cap}; "
            "use the sampling oracle instead"
        )
        self.count = count
        self.cap = cap


@dataclass(frozen=True, eq=False)
class SignPattern:
    indices: tuple[int, ...]
    signs: tuple[int, ...]
    witness: np.ndarray
    margin: float

    def bits(self) -> tuple[int, ...]:
        return tuple(1 if s > 0 else 0 for s in self.signs)


@dataclass(frozen=True, eq=False)
class HessianHull:
    extremes: list[CandidateHessian]
    point: np.ndarray
    base_pattern: np.ndarray

    def matrices(self) -> list[np.ndarray]:
        return [e.matrix for e in self.extremes]

    def nearest(self, H: np.ndarray) -> tuple[int, float]:
        d = [float(np.linalg.norm(H - M)) for M in self.matrices()]
        k = int(np.argmin(d))
        return k, d[k]


@dataclass(frozen=True, eq=False)
class SlaterResult:
    holds: bool
    witness: np.ndarray | None = None
    margin: float = 0.0
    reason: str = ""


@dataclass(frozen=True)
class LIResult:
    holds: bool
    rank: int
    count: int


@dataclass(frozen=True, eq=False)
class MangasarianVerdict:
    equal: bool
    witness: CandidateHessian | None = None
    non_members: list[tuple[CandidateHessian, HullMembership]] = field(default_factory=list)
    candidates_checked: int = 0


@dataclass(frozen=True, eq=False)
class EvtushenkoResult:
    plus_member: bool
    minus_member: bool
    plus: CandidateHessian
    minus: CandidateHessian


@dataclass(frozen=True, eq=False)
class AnalysisReport:
    point: np.ndarray
    partition: ActivityPartition
    slater: SlaterResult
    li_condition: LIResult
    patterns: list[SignPattern]
    hull: HessianHull
    mangasarian: MangasarianVerdict
    evtushenko: EvtushenkoResult

    def invariant_violations(self) -> list[str]:
        out = []
        if self.li_condition.holds and not self.mangasarian.equal:
            out.append("active rows independent but interval set strictly larger")
        if self.slater.holds and not (self.evtushenko.plus_member and self.evtushenko.minus_member):
            out.append("Slater holds but a D-matrix lies outside the generalized Hessian")
        return out


def check_slater(sys: LinearSystem, strict_tol: float = STRICT_TOL) -> SlaterResult:
    """Search for ``x`` with ``A x < b`` by maximizing a normalized margin.

    Solves ``max t  s.t.  <A_i, x> + t ||A_i|| <= b_i, 0 <= t <= 1`` over free
    ``x``; zero rows are decided from the sign of ``b_i`` alone.
    """
    zero = sys.row_norms == 0.0
    if np.any(sys.b[zero] <= 0.0):
        bad = int(np.flatnonzero(zero & (sys.b <= 0.0))[0])
        return SlaterResult(False, reason=f"zero row {bad} with b = {sys.b[bad]:g} cannot hold strictly")
    rows = np.flatnonzero(~zero)
    if rows.size == 0:
        return SlaterResult(True, np.zeros(sys.n), float("inf"))
    A = sys.A[rows]
    norms = sys.row_norms[rows]
    n = sys.n
    A_ub = np.zeros((rows.size + 1, n + 1))
    A_ub[:-1, :n] = A / norms[:, None]
    A_ub[:-1, n] = 1.0
    A_ub[-1, n] = 1.0
    b_ub = np.concatenate([sys.b[rows] / norms, [1.0]])
    c = np.zeros(n + 1)
    c[n] = 1.0
    mask = np.zeros(n + 1, dtype=bool)
    mask[n] = True
    out = solve_lp_arrays(c, A_ub, b_ub, nonneg=mask, maximize=True)
    if out.status is not LPStatus.OPTIMAL:
        return SlaterResult(False, reason=f"margin LP {out.status.value}")
    x = out.primal[:n]
    margin = float(((sys.b[rows] - A @ x) / norms).min())
    if margin >= strict_tol:
        return SlaterResult(True, x, margin)
    return SlaterResult(False, margin=margin, reason="no interior point")


def check_li(sys: LinearSystem, part: ActivityPartition, tol: float = RANK_TOL) -> LIResult:
    k = len(part.active)
    if k == 0:
        return LIResult(True, 0, 0)
    M = sys.A[list(part.active)].T
    _, R, _ = qr(M, mode="economic", pivoting=True)
    d = np.abs(np.diag(R))
    rank = 0 if d.size == 0 or d[0] == 0.0 else int(np.sum(d > tol * d[0]))
    return LIResult(k <= sys.n and rank == k, rank, k)


def enumerable_active(sys: LinearSystem, part: ActivityPartition) -> tuple[int, ...]:
    """Active indices that define a hyperplane (zero rows dropped)."""
    return tuple(i for i in part.active if sys.row_norms[i] > 0.0)


def enumerate_achievable_patterns(
    sys: LinearSystem,
    part: ActivityPartition,
    max_active: int = DEFAULT_MAX_ACTIVE,
    strict_tol: float = STRICT_TOL,
) -> list[SignPattern]:
    """All strict sign patterns on the active rows that some direction realizes.

    Depth-first over active indices in ascending order. An infeasible prefix
    prunes its subtree. When the parent's witness already has a clear sign
    on the next row, that child inherits the witness without an LP solve.
    """
    idx = enumerable_active(sys, part)
    if len(idx) > max_active:
        raise ActiveSetTooLarge(len(idx), max_active)
    U = sys.A[list(idx)] / sys.row_norms[list(idx)][:, None] if idx else np.zeros((0, sys.n))
    found: list[SignPattern] = []

    def visit(depth: int, signs: tuple[int, ...], y: np.ndarray, margin: float) -> None:
        if depth == len(idx):
            found.append(SignPattern(idx, signs, y, margin))
            return
        proj = float(U[depth] @ y)
        for s in (1, -1):
            child = signs + (s,)
            if s * proj >= strict_tol:
                visit(depth + 1, child, y, min(margin, s * proj))
                continue
            res = strict_feasibility(U[: depth + 1], child, strict_tol)
            if res.feasible:
                visit(depth + 1, child, res.y, res.margin)

    visit(0, (), np.zeros(sys.n), float("inf"))
    found.sort(key=lambda p: p.bits())
    return found


def cell_count_bound(k: int, n: int) -> int:
    """Maximum number of regions of a central arrangement of ``k`` hyperplanes in R^n."""
    if k == 0:
        return 1
    return 2 * sum(comb(k - 1, j) for j in range(n))


def pattern_vector(sys: LinearSystem, part: ActivityPartition, pattern: SignPattern) -> np.ndarray:
    v = base_pattern(sys, part)
    for i, s in zip(pattern.indices, pattern.signs):
        if s > 0:
            v[i] = 1
    return v


def _dedup(cands: list[CandidateHessian], tol: float = DEDUP_TOL) -> list[CandidateHessian]:
    out: list[CandidateHessian] = []
    for c in cands:
        if all(np.linalg.norm(c.matrix - o.matrix) > tol for o in out):
            out.append(c)
    return out


def limiting_hessians(
    sys: LinearSystem, part: ActivityPartition, patterns: list[SignPattern], x=None
) -> HessianHull:
    cands = []
    for p in patterns:
        v = pattern_vector(sys, part, p)
        cands.append(CandidateHessian(weighted_gram(sys, v), "pattern", tuple(int(t) for t in v), p))
    point = np.asarray(x, dtype=float) if x is not None else None
    return HessianHull(_dedup(cands), point, base_pattern(sys, part))


def mangasarian_vectors(
    sys: LinearSystem, part: ActivityPartition, max_active: int = DEFAULT_MAX_ACTIVE
) -> list[tuple[int, ...]]:
    """The set V: 0/1 vectors fixed on I+ / I-, free on I0.

    Ordered from the all-ones corner (the ``D_-`` diagonal) down to all-zeros
    (``D_+``), reading bit ``j`` as the ``j``-th active index.
    """
    act = list(part.active)
    if len(act) > max_active:
        raise ActiveSetTooLarge(len(act), max_active)
    base = base_pattern(sys, part)
    out = []
    for code in range(2 ** len(act) - 1, -1, -1):
        v = base.copy()
        for j, i in enumerate(act):
            v[i] = (code >> j) & 1
        out.append(tuple(int(t) for t in v))
    return out


def mangasarian_extremes(
    sys: LinearSystem, part: ActivityPartition, max_active: int = DEFAULT_MAX_ACTIVE
) -> list[CandidateHessian]:
    return [candidate_from_binary(sys, v) for v in mangasarian_vectors(sys, part, max_active)]


def verify_mangasarian_equality(
    sys: LinearSystem,
    part: ActivityPartition,
    hull: HessianHull,
    max_active: int = DEFAULT_MAX_ACTIVE,
) -> MangasarianVerdict:
    """Check every extreme of the interval set for membership in the hull.

    The hull is always contained in the interval set, so equality holds iff
    each of its extremes is a member.
    """
    cands = _dedup(mangasarian_extremes(sys, part, max_active))
    E = hull.matrices()
    misses = []
    for c in cands:
        res = hull_membership(E, c.matrix)
        if not res.member:
            misses.append((c, res))
    if misses:
        return MangasarianVerdict(False, misses[0][0], misses, len(cands))
    return MangasarianVerdict(True, None, [], len(cands))


def verify_evtushenko(sys: LinearSystem, part: ActivityPartition, hull: HessianHull) -> EvtushenkoResult:
    plus = d_matrix(sys, part, Side.PLUS)
    minus = d_matrix(sys, part, Side.MINUS)
    E = hull.matrices()
    return EvtushenkoResult(
        hull_membership(E, plus.matrix).member,
        hull_membership(E, minus.matrix).member,
        plus,
        minus,
    )


def generalized_hessian(
    sys: LinearSystem, x, max_active: int = DEFAULT_MAX_ACTIVE
) -> tuple[ActivityPartition, list[SignPattern], HessianHull]:
    part = classify_indices(sys, x)
    patterns = enumerate_achievable_patterns(sys, part, max_active)
    return part, patterns, limiting_hessians(sys, part, patterns, x)


def analyze(sys: LinearSystem, x, max_active: int = DEFAULT_MAX_ACTIVE) -> AnalysisReport:
    x = sys.check_point(x)
    part, patterns, hull = generalized_hessian(sys, x, max_active)
    slater = check_slater(sys)
    li = check_li(sys, part)
    verdict = verify_mangasarian_equality(sys, part, hull, max_active)
    evt = verify_evtushenko(sys, part, hull)
    return AnalysisReport(x, part, slater, li, patterns, hull, verdict, evt)


def hull_inside_interval_set(sys: LinearSystem, part: ActivityPartition, hull: HessianHull) -> bool:
    """Combinatorial self-check: each hull extreme's diagonal lies in V."""
    act = set(part.active)
    for e in hull.extremes:
        v = e.v
        for i in range(sys.m):
            if i in act:
                if v[i] not in (0, 1):
                    return False
            elif v[i] != (1 if i in part.violated else 0):
                return False
    return True


__all__ = [
    "ActiveSetTooLarge",
    "AnalysisReport",
    "EvtushenkoResult",
    "HessianHull",
    "LIResult",
    "MangasarianVerdict",
    "SignPattern",
    "SlaterResult",
    "analyze",
    "cell_count_bound",
    "check_li",
    "check_slater",
    "enumerate_achievable_patterns",
    "generalized_hessian",
    "hull_inside_interval_set",
    "limiting_hessians",
    "mangasarian_extremes",
    "mangasarian_vectors",
    "verify_evtushenko",
    "verify_mangasarian_equality",
]
