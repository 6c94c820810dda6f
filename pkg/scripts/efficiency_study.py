"""D/K efficiencies of the K-optimal design against the equal-weight {q,2} lattice.

Also checks that the equal-weight lattice is a fixed point of the
multiplicative D algorithm on its own support.
"""
import argparse

import numpy as np

from kmixture import Order, ScheffeBasis, compare_k_and_d, multiplicative_d_optimal
from kmixture.analytic import equal_weight_lattice


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--qmax", type=int, default=8)
    args = ap.parse_args()
    print(f"{'q':>3} {'p':>4} {'Eff_D(K-opt)':>13} {'Eff_K(D-ref)':>13} {'D fixed-point gap':>18}")
    for q in range(2, args.qmax + 1):
        ref = equal_weight_lattice(q)
        fixed = multiplicative_d_optimal(ref.points, ScheffeBasis(q, Order.SECOND), tol=1e-12)
        gap = float(np.max(np.abs(fixed.weights - ref.weights)))
        c = compare_k_and_d(q)
        print(f"{q:>3} {c.p:>4} {c.eff_d_of_k:>13.8f} {c.eff_k_of_d:>13.8f} {gap:>18.2e}")


if __name__ == "__main__":
    main()
