"""Plain-dict renderings of analysis results, for JSON and text output."""

from __future__ import annotations

import json
import math

import numpy as np

from .hessian import AnalysisReport, cell_count_bound, enumerable_active
from .newton import SolveTrace
from .oracle import SampleBatch
from .problem import CandidateHessian, LinearSystem, star_diagonal
from .problem_file import FORMAT_VERSION, problem_block


def num(v):
    """JSON-safe scalar: non-finite floats become strings."""
    v = float(v)
    if math.isfinite(v):
        return v
    return "nan" if math.isnan(v) else ("inf" if v > 0 else "-inf")


def vec(a) -> list:
    return [num(t) for t in np.asarray(a).ravel()]


def mat(a) -> list:
    return [vec(r) for r in np.asarray(a)]


def candidate(c: CandidateHessian) -> dict:
    return {"kind": c.kind, "matrix": mat(c.matrix), "v": list(c.v)}


def analysis_dict(sys: LinearSystem, rep: AnalysisReport) -> dict:
    part = rep.partition
    verdict = rep.mangasarian
    return {
        "version": FORMAT_VERSION,
        "problem": problem_block(sys),
        "point": vec(rep.point),
        "partition": {
            "active": list(part.active),
            "violated": list(part.violated),
            "satisfied": list(part.satisfied),
            "residuals": vec(part.residuals),
        },
        "star_diagonal": [e.value for e in star_diagonal(sys, part)],
        "slater": {
            "holds": rep.slater.holds,
            "witness": vec(rep.slater.witness) if rep.slater.witness is not None else None,
            "margin": num(rep.slater.margin),
        },
        "li_condition": {
            "holds": rep.li_condition.holds,
            "rank": rep.li_condition.rank,
            "count": rep.li_condition.count,
        },
        "patterns": [
            {"indices": list(p.indices), "signs": list(p.signs), "witness": vec(p.witness), "margin": num(p.margin)}
            for p in rep.patterns
        ],
        "cell_count_bound": cell_count_bound(len(enumerable_active(sys, part)), sys.n),
        "hull": {
            "base_pattern": [int(t) for t in rep.hull.base_pattern],
            "extremes": [candidate(e) for e in rep.hull.extremes],
        },
        "mangasarian": {
            "verdict": "Equal" if verdict.equal else "StrictSubset",
            "witness": candidate(verdict.witness) if verdict.witness is not None else None,
            "non_members": [dict(candidate(c), gap=num(r.gap)) for c, r in verdict.non_members],
            "candidates_checked": verdict.candidates_checked,
        },
        "evtushenko": {
            "plus_member": rep.evtushenko.plus_member,
            "minus_member": rep.evtushenko.minus_member,
            "d_plus": mat(rep.evtushenko.plus.matrix),
            "d_minus": mat(rep.evtushenko.minus.matrix),
        },
        "invariant_violations": rep.invariant_violations(),
    }


def sample_dict(sys: LinearSystem, batch: SampleBatch, extremes) -> dict:
    distinct = {s.v for s in batch.samples}
    return {
        "version": FORMAT_VERSION,
        "problem": problem_block(sys),
        "center": vec(batch.center),
        "radius": batch.radius,
        "count": batch.count,
        "seed": batch.seed,
        "rejected": batch.rejected,
        "hull_extremes": [mat(M) for M in extremes] if extremes is not None else None,
        "samples": [
            {
                "point": vec(s.point),
                "v": list(s.v),
                "exact_hessian": mat(s.exact_hessian),
                "fd_hessian": mat(s.fd_hessian),
                "match": s.match,
                "distance": num(s.distance),
            }
            for s in batch.samples
        ],
        "summary": {
            "matched_extremes": sorted(batch.matched_extremes()),
            "no_match": batch.no_match if extremes is not None else None,
            "distinct_patterns": len(distinct),
        },
    }


def trace_dict(sys: LinearSystem, trace: SolveTrace) -> dict:
    x = trace.x
    return {
        "version": FORMAT_VERSION,
        "problem": problem_block(sys),
        "status": trace.status.value,
        "message": trace.message,
        "delta": trace.delta,
        "armijo": {"slope": trace.armijo_slope, "backtrack": trace.backtrack},
        "iterations": trace.iterations,
        "iterates": [{"x": vec(p), "f": num(f), "grad_norm": num(g)} for p, f, g in trace.iterates],
        "final": {
            "x": vec(x),
            "f": num(trace.f),
            "max_positive_residual": num(max(0.0, float((sys.A @ x - sys.b).max()))),
        },
    }


def dumps(d: dict) -> str:
    return json.dumps(d, sort_keys=True, indent=2, allow_nan=False)


def _fmt(M) -> str:
    return "[" + ", ".join("[" + ", ".join(f"{t:g}" for t in r) + "]" for r in np.asarray(M)) + "]"


def analysis_text(sys: LinearSystem, rep: AnalysisReport) -> str:
    part = rep.partition
    lines = [
        f"point           {vec(rep.point)}",
        f"active          {list(part.active)}  violated {list(part.violated)}  satisfied {list(part.satisfied)}",
        f"slater          {'holds' if rep.slater.holds else 'fails'}",
        f"independence    {'holds' if rep.li_condition.holds else 'fails'} "
        f"(rank {rep.li_condition.rank} of {rep.li_condition.count})",
        f"patterns        {len(rep.patterns)}",
        "hull extremes",
    ]
    lines += [f"  {_fmt(e.matrix)}" for e in rep.hull.extremes]
    if rep.mangasarian.equal:
        lines.append("interval set    Equal")
    else:
        lines.append(f"interval set    StrictSubset, witness {_fmt(rep.mangasarian.witness.matrix)}")
    lines.append(
        f"D+ member       {rep.evtushenko.plus_member}\nD- member       {rep.evtushenko.minus_member}"
    )
    return "\n".join(lines)


def sample_text(d: dict) -> str:
    s = d["summary"]
    return (
        f"samples {d['count']} (rejected {d['rejected']}), seed {d['seed']}, radius {d['radius']:g}\n"
        f"matched extremes {s['matched_extremes']}, no match {s['no_match']}, "
        f"distinct patterns {s['distinct_patterns']}"
    )


def trace_text(d: dict) -> str:
    lines = [f"{k:4d}  f={it['f']:.3e}  |g|={it['grad_norm']:.3e}" for k, it in enumerate(d["iterates"])]
    lines.append(f"status {d['status']} after {d['iterations']} iterations, final f {d['final']['f']:.3e}")
    return "\n".join(lines)
