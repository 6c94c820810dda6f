"""Map the q=3 K-optimal design onto an upper-bounded mixture region and back."""
import argparse

import numpy as np

from kmixture import ComponentBounds, Direction, k_optimal_second_order, transform_design


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--upper", type=float, nargs=3, default=[0.43, 0.35, 0.50])
    args = ap.parse_args()
    bounds = ComponentBounds(np.zeros(3), args.upper)
    pseudo = k_optimal_second_order(3)
    orig = transform_design(pseudo, bounds, Direction.FROM_PSEUDO_UPPER)
    back = transform_design(orig, bounds, Direction.TO_PSEUDO_UPPER)
    print("pseudo point            original point          weight")
    for xs, x, w in zip(pseudo.points, orig.points, orig.exact_weights):
        print(f"{np.array2string(xs, precision=3):<23} {np.array2string(x, precision=4):<23} {w}")
    print(f"round-trip max error: {np.max(np.abs(back.points - pseudo.points)):.2e}")


if __name__ == "__main__":
    main()
