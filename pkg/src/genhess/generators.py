"""Random inequality systems with a prescribed structure at a query point."""

from __future__ import annotations

import numpy as np

from .problem import LinearSystem


def _rows(rng: np.random.Generator, m: int, n: int, integer: bool) -> np.ndarray:
    if not integer:
        return rng.normal(size=(m, n))
    A = rng.integers(-2, 3, size=(m, n)).astype(float)
    for i in range(m):
        while not A[i].any():
            A[i] = rng.integers(-2, 3, size=n)
    return A


def slater_system(
    rng: np.random.Generator,
    m: int,
    n: int,
    n_active: int,
    integer: bool = False,
) -> tuple[LinearSystem, np.ndarray, np.ndarray]:
    """System satisfying Slater with ``n_active`` rows tight at the query point.

    Returns ``(sys, x, x_hat)`` with ``A x_hat < b`` and ``<A_i, x> = b_i`` for
    the first ``n_active`` rows. Integer rows make dependent active sets
    likely, which is where the interval set and the hull differ.
    """
    A = _rows(rng, m, n, integer)
    x_hat = rng.normal(size=n)
    if integer:
        x = x_hat + rng.integers(-2, 3, size=n)
        while not (x - x_hat).any():
            x = x_hat + rng.integers(-2, 3, size=n)
    else:
        x = x_hat + rng.normal(size=n)
    d = x - x_hat
    b = np.empty(m)
    for i in range(m):
        if i < n_active:
            # Orient the row so x_hat is strictly inside; redraw if orthogonal to d.
            while abs(A[i] @ d) < 1e-3 * np.linalg.norm(A[i]) * np.linalg.norm(d):
                A[i] = _rows(rng, 1, n, integer)[0]
            if A[i] @ d < 0:
                A[i] = -A[i]
            b[i] = A[i] @ x
        else:
            b[i] = A[i] @ x_hat + rng.uniform(0.1, 2.0)
            if abs(A[i] @ x - b[i]) < 1e-3:
                b[i] += 0.5
    return LinearSystem(A, b), x, x_hat


def independent_active_system(
    rng: np.random.Generator, m: int, n: int, n_active: int
) -> tuple[LinearSystem, np.ndarray]:
    """System whose first ``n_active <= n`` rows are tight and independent at ``x``."""
    if n_active > n:
        raise ValueError("independent active rows need n_active <= n")
    A = rng.normal(size=(m, n))
    while n_active and np.linalg.matrix_rank(A[:n_active]) < n_active:
        A[:n_active] = rng.normal(size=(n_active, n))
    x = rng.normal(size=n)
    b = A @ x
    off = rng.uniform(0.1, 2.0, size=m - n_active) * rng.choice([-1.0, 1.0], size=m - n_active)
    b[n_active:] += off
    return LinearSystem(A, b), x


def random_lp(rng: np.random.Generator, n_vars: int, n_rows: int):
    """Feasible, bounded ``max c.x  s.t.  A x <= b`` with ``n_rows >= n_vars``."""
    A = rng.normal(size=(n_rows, n_vars))
    x0 = rng.normal(size=n_vars)
    b = A @ x0 + rng.uniform(0.0, 1.0, size=n_rows)
    c = A.T @ rng.uniform(0.0, 1.0, size=n_rows)
    return c, A, b


def degenerate_system(
    rng: np.random.Generator, m: int, n: int, n_active: int
) -> tuple[LinearSystem, np.ndarray]:
    """Small-integer rows with the first ``n_active`` tight at ``x``; Slater may fail.

    An active row is sometimes the negation of the one before it, which gives
    pairs like ``x1 <= 0, -x1 <= 0``.
    """
    A = _rows(rng, m, n, integer=True)
    for i in range(1, min(n_active, m)):
        if rng.random() < 0.3:
            A[i] = -A[i - 1]
    x = rng.integers(-2, 3, size=n).astype(float)
    b = A @ x
    b[n_active:] += rng.uniform(0.5, 2.0, size=m - n_active) * rng.choice([-1.0, 1.0], size=m - n_active)
    return LinearSystem(A, b), x
