"""The inequality system ``A x <= b`` and the penalty ``f(x) = 0.5 * ||(Ax - b)_+||^2``.

Everything here is a pure function of a :class:`LinearSystem` and a point.
The candidate matrices ``A^T diag(v) A`` built at the bottom are shared by
the hull computation, the sampling oracle and the Newton solver.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

DEFAULT_EPS_ACTIVE = 1e-9


class DimensionError(ValueError):
    """Raised when an array does not have the size the system expects."""


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class LinearSystem:
    """Dense system ``A x <= b`` with an activity tolerance.

    ``A`` is ``m x n``, ``b`` has length ``m``. Arrays are copied and frozen
    on construction so a system can be shared freely.
    """

    A: np.ndarray
    b: np.ndarray
    eps_active: float = DEFAULT_EPS_ACTIVE
    row_norms: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        b = np.asarray(self.b, dtype=float)
        if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
            raise DimensionError(f"A must be a non-empty 2-D matrix, got shape {A.shape}")
        if b.ndim != 1 or b.shape[0] != A.shape[0]:
            raise DimensionError(f"b must have length {A.shape[0]}, got shape {b.shape}")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
            raise ValueError("A and b must be finite")
        if not (np.isfinite(self.eps_active) and self.eps_active >= 0):
            raise ValueError(f"eps_active must be a nonnegative real, got {self.eps_active}")
        object.__setattr__(self, "A", _readonly(A))
        object.__setattr__(self, "b", _readonly(b))
        object.__setattr__(self, "eps_active", float(self.eps_active))
        object.__setattr__(self, "row_norms", _readonly(np.linalg.norm(A, axis=1)))

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.A.shape[1]

    @property
    def zero_rows(self) -> np.ndarray:
        return np.flatnonzero(self.row_norms == 0.0)

    def residuals(self, x) -> np.ndarray:
        return self.A @ self.check_point(x) - self.b

    def check_point(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise DimensionError(f"point must have length {self.n}, got shape {x.shape}")
        if not np.all(np.isfinite(x)):
            raise ValueError("point must be finite")
        return x

    def same_as(self, other: "LinearSystem") -> bool:
        return (
            self.A.shape == other.A.shape
            and np.array_equal(self.A, other.A)
            and np.array_equal(self.b, other.b)
            and self.eps_active == other.eps_active
        )


@dataclass(frozen=True)
class ActivityPartition:
    """Index sets I0 (active), I+ (violated), I- (satisfied) at a point."""

    active: tuple[int, ...]
    violated: tuple[int, ...]
    satisfied: tuple[int, ...]
    residuals: np.ndarray


class StarEntry(enum.Enum):
    ZERO = "0"
    ONE = "1"
    INTERVAL01 = "[0,1]"


class Side(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True, eq=False)
class CandidateHessian:
    """A matrix ``A^T diag(v) A`` together with where it came from.

    ``kind`` is one of ``"d_plus"``, ``"d_minus"``, ``"pattern"``,
    ``"extreme_v"``; ``v`` is the 0/1 diagonal used to build it.
    """

    matrix: np.ndarray
    kind: str
    v: tuple[int, ...]
    pattern: object = None


def eval_f(sys: LinearSystem, x) -> float:
    r = np.maximum(sys.residuals(x), 0.0)
    return 0.5 * float(r @ r)


def eval_grad(sys: LinearSystem, x) -> np.ndarray:
    return sys.A.T @ np.maximum(sys.residuals(x), 0.0)


def activity_bound(sys: LinearSystem) -> np.ndarray:
    """Per-row threshold ``eps_active * (1 + ||A_i||)`` on ``|r_i|``."""
    return sys.eps_active * (1.0 + sys.row_norms)


def classify_indices(sys: LinearSystem, x) -> ActivityPartition:
    r = sys.residuals(x)
    bound = activity_bound(sys)
    # Zero rows have a constant residual -b_i; classify it against the same bound.
    active = np.abs(r) <= bound
    violated = r > bound
    satisfied = r < -bound
    r = r.copy()
    r.setflags(write=False)
    return ActivityPartition(
        active=tuple(int(i) for i in np.flatnonzero(active)),
        violated=tuple(int(i) for i in np.flatnonzero(violated)),
        satisfied=tuple(int(i) for i in np.flatnonzero(satisfied)),
        residuals=r,
    )


def star_diagonal(sys: LinearSystem, part: ActivityPartition) -> tuple[StarEntry, ...]:
    entries = [StarEntry.ZERO] * sys.m
    for i in part.violated:
        entries[i] = StarEntry.ONE
    for i in part.active:
        entries[i] = StarEntry.INTERVAL01
    return tuple(entries)


def weighted_gram(sys: LinearSystem, v) -> np.ndarray:
    """``A^T diag(v) A``, symmetrized to kill rounding asymmetry."""
    v = np.asarray(v, dtype=float)
    if v.shape != (sys.m,):
        raise DimensionError(f"diagonal must have length {sys.m}, got shape {v.shape}")
    H = (sys.A.T * v) @ sys.A
    return 0.5 * (H + H.T)


def base_pattern(sys: LinearSystem, part: ActivityPartition) -> np.ndarray:
    """0/1 vector with ones on I+ and zeros elsewhere."""
    v = np.zeros(sys.m, dtype=int)
    v[list(part.violated)] = 1
    return v


def d_matrix(sys: LinearSystem, part: ActivityPartition, side: Side) -> CandidateHessian:
    v = base_pattern(sys, part)
    if side is Side.MINUS:
        v[list(part.active)] = 1
        kind = "d_minus"
    else:
        kind = "d_plus"
    return CandidateHessian(weighted_gram(sys, v), kind, tuple(int(t) for t in v))


def candidate_from_binary(sys: LinearSystem, v) -> CandidateHessian:
    v = np.asarray(v)
    if v.shape != (sys.m,):
        raise DimensionError(f"binary vector must have length {sys.m}, got shape {v.shape}")
    if not np.all((v == 0) | (v == 1)):
        raise ValueError("binary vector must have entries in {0, 1}")
    v = v.astype(int)
    return CandidateHessian(weighted_gram(sys, v), "extreme_v", tuple(int(t) for t in v))
