"""Compare the numerical K-optimizer with the closed-form weights.

Runs the symmetry-reduced search (golden section) and, optionally, the
unreduced multistart search on vertices + edge midpoints.
"""
import argparse
import time

import numpy as np

from kmixture import Order, ScheffeBasis, k_optimal_second_order, vertices_and_midpoints
from kmixture.analytic import symmetric_condition_number
from kmixture.optimize import Criterion, OptimizeSpec, optimize_weights


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--qmax", type=int, default=8)
    ap.add_argument("--full", action="store_true", help="also run without symmetry reduction (slow)")
    ap.add_argument("--multistarts", type=int, default=5)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    modes = [True, False] if args.full else [True]
    for q in range(2, args.qmax + 1):
        target = k_optimal_second_order(q)
        kappa = symmetric_condition_number(q, float(target.exact_weights[-1]))
        for reduce in modes:
            spec = OptimizeSpec(Criterion.K, vertices_and_midpoints(q), ScheffeBasis(q, Order.SECOND),
                                tolerance=1e-9 if reduce else 1e-7, multistarts=args.multistarts,
                                symmetry_reduction=reduce, threads=args.threads)
            t0 = time.perf_counter()
            res = optimize_weights(spec)
            dt = time.perf_counter() - t0
            err = float(np.max(np.abs(res.weights - target.weights)))
            tag = "reduced" if reduce else "full"
            print(f"q={q} {tag:<7} max|w-w*|={err:.2e} kappa={res.objective:.10g} "
                  f"closed={kappa:.10g} converged={res.converged} {dt:.2f}s")


if __name__ == "__main__":
    main()
