"""Iteration counts of the generalized Newton method with D_- versus D_+."""

import argparse
from dataclasses import dataclass

import numpy as np

from genhess.generators import slater_system
from genhess.newton import NewtonConfig, SolveStatus, solve
from genhess.problem import Side


@dataclass
class DemoConfig:
    trials: int = 100
    max_dim: int = 50
    spread: float = 3.0
    seed: int = 0


def run(cfg: DemoConfig):
    rng = np.random.default_rng(cfg.seed)
    stats = {side: [] for side in Side}
    failed = {side: 0 for side in Side}
    for _ in range(cfg.trials):
        m, n = int(rng.integers(1, cfg.max_dim + 1)), int(rng.integers(1, cfg.max_dim + 1))
        sys, x, _ = slater_system(rng, m, n, 0)
        x0 = x + cfg.spread * rng.normal(size=n)
        for side in Side:
            trace = solve(sys, x0, NewtonConfig(side=side, max_iter=200))
            if trace.status is SolveStatus.CONVERGED:
                stats[side].append(trace.iterations)
            else:
                failed[side] += 1
    for side in Side:
        it = np.array(stats[side])
        print(
            f"D_{'+' if side is Side.PLUS else '-'}: converged {it.size}/{cfg.trials}, "
            f"iterations median {np.median(it):.0f}, max {it.max()}, not converged {failed[side]}"
        )


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--trials", type=int, default=DemoConfig.trials)
    p.add_argument("--max-dim", type=int, default=DemoConfig.max_dim)
    p.add_argument("--spread", type=float, default=DemoConfig.spread)
    p.add_argument("--seed", type=int, default=DemoConfig.seed)
    run(DemoConfig(**vars(p.parse_args())))
