"""Finite-difference cross-checks that do not go through the LP machinery.

Points are sampled near ``x`` away from every hyperplane, where ``f`` is a
quadratic. The exact local Hessian there is ``A^T diag(v) A`` with ``v``
read off the residual signs; a central-difference Hessian of the gradient
should agree with it and with some extreme of the exact hull.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .problem import LinearSystem, classify_indices, eval_f, eval_grad, weighted_gram

MATCH_TOL = 1e-5


class RadiusTooLarge(ValueError):
    def __init__(self, radius: float, safe: float):
        super().__init__(f"radius {radius:g} may cross an inactive hyperplane; use radius < {safe:g}")
        self.radius = radius
        self.safe = safe


def fd_gradient(sys: LinearSystem, x, h: float = 1e-5) -> np.ndarray:
    if not h > 0:
        raise ValueError("step must be positive")
    x = sys.check_point(x)
    g = np.empty(sys.n)
    for j in range(sys.n):
        e = np.zeros(sys.n)
        e[j] = h
        g[j] = (eval_f(sys, x + e) - eval_f(sys, x - e)) / (2 * h)
    return g


def fd_hessian(sys: LinearSystem, x, h: float = 1e-5) -> np.ndarray:
    """Central differences of the gradient, symmetrized."""
    x = sys.check_point(x)
    H = np.empty((sys.n, sys.n))
    for j in range(sys.n):
        e = np.zeros(sys.n)
        e[j] = h
        H[:, j] = (eval_grad(sys, x + e) - eval_grad(sys, x - e)) / (2 * h)
    return 0.5 * (H + H.T)


def fd_step(x) -> float:
    return 1e-5 * (1.0 + float(np.linalg.norm(x)))


def safe_radius(sys: LinearSystem, x) -> float:
    """Largest box radius on which no inactive constraint changes sign.

    Over ``||d||_inf <= r`` the residual moves by at most ``r * ||A_i||_1``.
    """
    part = classify_indices(sys, x)
    r = part.residuals
    l1 = np.abs(sys.A).sum(axis=1)
    inactive = [i for i in range(sys.m) if i not in set(part.active) and l1[i] > 0]
    if not inactive:
        return float("inf")
    return float(min(abs(r[i]) / l1[i] for i in inactive))


@dataclass(frozen=True, eq=False)
class Sample:
    point: np.ndarray
    v: tuple[int, ...]
    exact_hessian: np.ndarray
    fd_hessian: np.ndarray
    match: int | None
    distance: float


@dataclass(frozen=True, eq=False)
class SampleBatch:
    center: np.ndarray
    radius: float
    count: int
    seed: int
    samples: list[Sample] = field(default_factory=list)
    rejected: int = 0

    @property
    def no_match(self) -> int:
        return sum(1 for s in self.samples if s.match is None)

    def matched_extremes(self) -> set[int]:
        return {s.match for s in self.samples if s.match is not None}


def sample_limiting_hessians(
    sys: LinearSystem,
    x,
    radius: float,
    count: int,
    seed: int = 0,
    extremes: list[np.ndarray] | None = None,
    max_attempts: int | None = None,
) -> SampleBatch:
    """Draw ``count`` differentiable points uniformly in the box around ``x``.

    ``extremes`` are the hull matrices to match against; when omitted each
    sample's match is left empty. Points within ``10 h ||A_i||`` of a
    hyperplane are redrawn so the difference stencil stays in one cell.
    """
    x = sys.check_point(x)
    if not radius > 0:
        raise ValueError("radius must be positive")
    if count < 0:
        raise ValueError("count must be nonnegative")
    safe = safe_radius(sys, x)
    if radius >= safe:
        raise RadiusTooLarge(radius, safe)
    rng = np.random.default_rng(seed)
    h = fd_step(x)
    guard = 10.0 * h * sys.row_norms
    live = sys.row_norms > 0
    attempts = max_attempts if max_attempts is not None else 1000 * max(count, 1)

    samples: list[Sample] = []
    rejected = 0
    while len(samples) < count:
        if rejected > attempts:
            raise RuntimeError(f"rejected {rejected} points near hyperplanes; shrink the radius")
        p = x + rng.uniform(-radius, radius, size=sys.n)
        r = sys.A @ p - sys.b
        if np.any(np.abs(r[live]) <= guard[live]):
            rejected += 1
            continue
        v = (r > 0).astype(int)
        exact = weighted_gram(sys, v)
        fd = fd_hessian(sys, p, h)
        match, dist = None, float("nan")
        if extremes:
            d = [float(np.linalg.norm(fd - M)) for M in extremes]
            k = int(np.argmin(d))
            dist = d[k]
            match = k if dist <= MATCH_TOL else None
        samples.append(Sample(p, tuple(int(t) for t in v), exact, fd, match, dist))
    return SampleBatch(x.copy(), float(radius), int(count), int(seed), samples, rejected)
