"""The two worked systems and the values they must reproduce.

``counterexample_system``: ``x1 <= 0, -x1 <= 0``. Here ``f = x1^2 / 2`` is C^2,
so the generalized Hessian at 0 is the single matrix ``diag(1, 0)`` while the
interval set is ``diag([0, 2], 0)`` and neither D-matrix is a member.

``three_row_system``: ``x1 <= 0, x2 <= 0, x1 + x2 <= 0``. Slater holds, there are
six cells around 0, and ``[[1, 1], [1, 1]]`` lies in the interval set but not
in the hull.
"""

from __future__ import annotations

import copy
from typing import Callable

import numpy as np

from .hessian import analyze, check_slater, mangasarian_extremes
from .lp import hull_membership
from .problem import LinearSystem, eval_f, eval_grad

MATRIX_TOL = 1e-9


def counterexample_system() -> LinearSystem:
    return LinearSystem([[1.0, 0.0], [-1.0, 0.0]], [0.0, 0.0])


def three_row_system() -> LinearSystem:
    return LinearSystem([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]], [0.0, 0.0, 0.0])


THREE_ROW_HULL = [
    [[0.0, 0.0], [0.0, 0.0]],
    [[0.0, 0.0], [0.0, 1.0]],
    [[1.0, 1.0], [1.0, 2.0]],
    [[1.0, 0.0], [0.0, 0.0]],
    [[2.0, 1.0], [1.0, 1.0]],
    [[2.0, 1.0], [1.0, 2.0]],
]

EXPECTED = {
    "counterexample.f(3,7)": 4.5,
    "counterexample.grad(3,7)": [3.0, 0.0],
    "counterexample.slater": False,
    "counterexample.hull": [[[1.0, 0.0], [0.0, 0.0]]],
    "counterexample.interval_extremes": [
        [[0.0, 0.0], [0.0, 0.0]],
        [[1.0, 0.0], [0.0, 0.0]],
        [[2.0, 0.0], [0.0, 0.0]],
    ],
    "counterexample.d_plus": [[0.0, 0.0], [0.0, 0.0]],
    "counterexample.d_minus": [[2.0, 0.0], [0.0, 0.0]],
    "counterexample.evtushenko": [False, False],
    "counterexample.verdict": "StrictSubset",
    "counterexample.witness": [[2.0, 0.0], [0.0, 0.0]],
    "three_row.f(1,1)": 3.0,
    "three_row.grad(-1,2)": [1.0, 3.0],
    "three_row.slater": True,
    "three_row.pattern_count": 6,
    "three_row.hull": THREE_ROW_HULL,
    "three_row.alpha_system_member": False,
    "three_row.verdict": "StrictSubset",
    "three_row.witness": [[1.0, 1.0], [1.0, 1.0]],
    "three_row.evtushenko": [True, True],
}


def _same_matrix_set(got, want, tol=MATRIX_TOL) -> bool:
    got = [np.asarray(g, dtype=float) for g in got]
    want = [np.asarray(w, dtype=float) for w in want]
    if len(got) != len(want):
        return False
    left = list(got)
    for w in want:
        hit = next((k for k, g in enumerate(left) if g.shape == w.shape and np.abs(g - w).max() <= tol), None)
        if hit is None:
            return False
        left.pop(hit)
    return True


def _close(got, want, tol=MATRIX_TOL) -> bool:
    if isinstance(want, (bool, str)):
        return got == want
    if isinstance(want, list) and want and isinstance(want[0], bool):
        return list(got) == want
    if isinstance(want, int) and not isinstance(want, bool) and isinstance(got, int):
        return got == want
    g, w = np.asarray(got, dtype=float), np.asarray(want, dtype=float)
    return g.shape == w.shape and bool(np.all(np.abs(g - w) <= tol))


def _observed() -> dict[str, Callable[[], object]]:
    s2, s3 = counterexample_system(), three_row_system()
    o = np.zeros(2)
    r2, r3 = analyze(s2, o), analyze(s3, o)
    p2 = r2.partition
    distinct2 = []
    for c in mangasarian_extremes(s2, p2):
        if not any(np.array_equal(c.matrix, d) for d in distinct2):
            distinct2.append(c.matrix)
    return {
        "counterexample.f(3,7)": lambda: eval_f(s2, [3.0, 7.0]),
        "counterexample.grad(3,7)": lambda: eval_grad(s2, [3.0, 7.0]),
        "counterexample.slater": lambda: check_slater(s2).holds,
        "counterexample.hull": lambda: r2.hull.matrices(),
        "counterexample.interval_extremes": lambda: distinct2,
        "counterexample.d_plus": lambda: r2.evtushenko.plus.matrix,
        "counterexample.d_minus": lambda: r2.evtushenko.minus.matrix,
        "counterexample.evtushenko": lambda: [r2.evtushenko.plus_member, r2.evtushenko.minus_member],
        "counterexample.verdict": lambda: "Equal" if r2.mangasarian.equal else "StrictSubset",
        "counterexample.witness": lambda: r2.mangasarian.witness.matrix,
        "three_row.f(1,1)": lambda: eval_f(s3, [1.0, 1.0]),
        "three_row.grad(-1,2)": lambda: eval_grad(s3, [-1.0, 2.0]),
        "three_row.slater": lambda: r3.slater.holds,
        "three_row.pattern_count": lambda: len(r3.patterns),
        "three_row.hull": lambda: r3.hull.matrices(),
        "three_row.alpha_system_member": lambda: hull_membership(
            r3.hull.matrices(), np.array([[1.0, 1.0], [1.0, 1.0]])
        ).member,
        "three_row.verdict": lambda: "Equal" if r3.mangasarian.equal else "StrictSubset",
        "three_row.witness": lambda: r3.mangasarian.witness.matrix,
        "three_row.evtushenko": lambda: [r3.evtushenko.plus_member, r3.evtushenko.minus_member],
    }


def run_paper_checks(expected: dict | None = None) -> list[tuple[str, bool, str]]:
    """Compare observed values against ``expected`` (default :data:`EXPECTED`)."""
    expected = copy.deepcopy(EXPECTED if expected is None else expected)
    observed = _observed()
    out = []
    for name in sorted(expected):
        want = expected[name]
        if name not in observed:
            out.append((name, False, "no such check"))
            continue
        got = observed[name]()
        if name.endswith(".hull") or name.endswith("_extremes"):
            ok = _same_matrix_set(got, want)
        else:
            ok = _close(got, want)
        detail = "" if ok else f"expected {want!r}, got {np.asarray(got).tolist()!r}"
        out.append((name, ok, detail))
    return out
