"""How often does the interval set overshoot the generalized Hessian?

Sweeps random Slater systems with forced active sets and tabulates, per
active-set size, how many points have a strictly smaller hull and what
fraction of interval-set extremes are missing from it.

    python scripts/property_sweep.py --trials 300 --n 3
"""

import argparse
import time
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from genhess.generators import slater_system
from genhess.hessian import generalized_hessian, mangasarian_vectors, verify_evtushenko


@dataclass
class SweepConfig:
    trials: int = 300
    n: int = 3
    m: int = 10
    max_active: int = 7
    integer: bool = True
    seed: int = 0


def run(cfg: SweepConfig):
    rng = np.random.default_rng(cfg.seed)
    rows = defaultdict(lambda: [0, 0, 0.0, 0])
    t0 = time.perf_counter()
    for _ in range(cfg.trials):
        k = int(rng.integers(0, cfg.max_active + 1))
        sys, x, _ = slater_system(rng, max(cfg.m, k), cfg.n, k, integer=cfg.integer)
        part, patterns, hull = generalized_hessian(sys, x)
        evt = verify_evtushenko(sys, part, hull)
        n_interval = len(set(mangasarian_vectors(sys, part)))
        hull_v = {e.v for e in hull.extremes}
        r = rows[k]
        r[0] += 1
        r[1] += len(patterns) < 2**k
        r[2] += 1.0 - len(hull_v) / n_interval
        r[3] += not (evt.plus_member and evt.minus_member)
    elapsed = time.perf_counter() - t0
    print(f"n = {cfg.n}, {cfg.trials} systems in {elapsed:.1f} s")
    print(" |I0|  points  missing cells  mean fraction of V absent  D+/D- failures")
    for k in sorted(rows):
        cnt, strict, frac, bad = rows[k]
        print(f" {k:4d}  {cnt:6d}  {strict:13d}  {frac / cnt:25.3f}  {bad:14d}")


def parse() -> SweepConfig:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f, default in SweepConfig.__dataclass_fields__.items():
        kind = type(default.default)
        if kind is bool:
            p.add_argument(f"--{f.replace('_', '-')}", action=argparse.BooleanOptionalAction, default=default.default)
        else:
            p.add_argument(f"--{f.replace('_', '-')}", type=kind, default=default.default)
    return SweepConfig(**vars(p.parse_args()))


if __name__ == "__main__":
    run(parse())
