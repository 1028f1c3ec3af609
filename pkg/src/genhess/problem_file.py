"""JSON problem files.

A problem file looks like::

    {
      "version": "genhess/1",
      "A": [[1, 0], [-1, 0]],
      "b": [0, 0],
      "points": {"origin": [0, 0]},
      "eps_active": 1e-9
    }

``points`` and ``eps_active`` are optional.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .problem import DEFAULT_EPS_ACTIVE, LinearSystem

FORMAT_VERSION = "genhess/1"


class ProblemFileError(ValueError):
    pass


@dataclass
class ProblemFile:
    A: list[list[float]]
    b: list[float]
    points: dict[str, list[float]] = field(default_factory=dict)
    eps_active: float = DEFAULT_EPS_ACTIVE

    def system(self, eps_active: float | None = None) -> LinearSystem:
        eps = self.eps_active if eps_active is None else eps_active
        return LinearSystem(np.array(self.A, dtype=float), np.array(self.b, dtype=float), eps)


def _real(v, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ProblemFileError(f"{where}: expected a finite number, got {v!r}")
    return float(v)


def _vector(v, where: str) -> list[float]:
    if not isinstance(v, list):
        raise ProblemFileError(f"{where}: expected a list of numbers")
    return [_real(t, f"{where}[{k}]") for k, t in enumerate(v)]


def parse_problem(data: dict) -> ProblemFile:
    if not isinstance(data, dict):
        raise ProblemFileError("top level must be an object")
    version = data.get("version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ProblemFileError(f"unsupported version {version!r}, expected {FORMAT_VERSION!r}")
    for key in ("A", "b"):
        if key not in data:
            raise ProblemFileError(f"missing required field {key!r}")
    rows = data["A"]
    if not isinstance(rows, list) or not rows:
        raise ProblemFileError("A: expected a non-empty list of rows")
    A = [_vector(r, f"A[{i}]") for i, r in enumerate(rows)]
    n = len(A[0])
    if n == 0:
        raise ProblemFileError("A: rows must be non-empty")
    for i, r in enumerate(A):
        if len(r) != n:
            raise ProblemFileError(f"A[{i}]: has {len(r)} entries, expected {n} (A must be rectangular)")
    b = _vector(data["b"], "b")
    if len(b) != len(A):
        raise ProblemFileError(f"b: has {len(b)} entries, expected {len(A)}")
    points = {}
    raw_points = data.get("points", {})
    if not isinstance(raw_points, dict):
        raise ProblemFileError("points: expected an object mapping names to vectors")
    for name, p in raw_points.items():
        vec = _vector(p, f"points.{name}")
        if len(vec) != n:
            raise ProblemFileError(f"points.{name}: has {len(vec)} entries, expected {n}")
        points[name] = vec
    eps = data.get("eps_active", DEFAULT_EPS_ACTIVE)
    eps = _real(eps, "eps_active")
    if eps < 0:
        raise ProblemFileError("eps_active: must be nonnegative")
    return ProblemFile(A, b, points, eps)


def loads_problem(text: str) -> ProblemFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return parse_problem(data)


def load_problem(path) -> ProblemFile:
    return loads_problem(Path(path).read_text())


def problem_block(sys: LinearSystem) -> dict:
    """The ``A``/``b``/``eps_active`` part of a problem file for ``sys``."""
    return {
        "version": FORMAT_VERSION,
        "A": sys.A.tolist(),
        "b": sys.b.tolist(),
        "eps_active": sys.eps_active,
    }


_SPLIT = re.compile(r"[,\s]+")


def resolve_point(problem: ProblemFile, spec: str) -> np.ndarray:
    """A point by name from the file, or an inline vector like ``(-1,-1)``."""
    if spec in problem.points:
        return np.array(problem.points[spec], dtype=float)
    body = spec.strip().strip("()[]").strip()
    if not body:
        raise ProblemFileError(f"unknown point {spec!r}")
    try:
        vals = [float(t) for t in _SPLIT.split(body) if t]
    except ValueError:
        known = ", ".join(sorted(problem.points)) or "none"
        raise ProblemFileError(f"unknown point {spec!r} (named points: {known})") from None
    n = len(problem.A[0])
    if len(vals) != n:
        raise ProblemFileError(f"point {spec!r} has {len(vals)} entries, expected {n}")
    if not all(math.isfinite(v) for v in vals):
        raise ProblemFileError(f"point {spec!r} must be finite")
    return np.array(vals)
