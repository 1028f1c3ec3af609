"""Print the full analysis of both worked systems at the origin."""

import numpy as np

from genhess.hessian import analyze
from genhess.paper import counterexample_system, run_paper_checks, three_row_system
from genhess.report import analysis_text


def main():
    for name, sys in [("x1 <= 0, -x1 <= 0", counterexample_system()), ("x1, x2, x1 + x2 <= 0", three_row_system())]:
        print(f"== {name}")
        rep = analyze(sys, np.zeros(2))
        print(analysis_text(sys, rep))
        for c, res in rep.mangasarian.non_members:
            print(f"  non-member {c.matrix.tolist()} (v={c.v}, phase-one gap {res.gap:.3g})")
        print()
    results = run_paper_checks()
    print(f"{sum(ok for _, ok, _ in results)}/{len(results)} reference values reproduced")


if __name__ == "__main__":
    main()
