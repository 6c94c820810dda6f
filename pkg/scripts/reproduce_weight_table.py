"""Print the K-optimal second-order weights for q = 3..qmax and the limiting shares."""
import argparse

from kmixture.analytic import weight_table, weight_table_csv, weight_table_text


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--qmax", type=int, default=10)
    ap.add_argument("--csv", action="store_true")
    args = ap.parse_args()
    rows = weight_table(args.qmax)
    print(weight_table_csv(rows) if args.csv else weight_table_text(rows), end="")
    if not args.csv:
        for q in (100, 10_000, 1_000_000):
            (r,) = weight_table(q, q_min=q)
            print(f"q={q:>9}: n1*r1 - 1/2 = {float(r.n1r1) - 0.5:+.3e}, n2*r2 - 1/2 = {float(r.n2r2) - 0.5:+.3e}")


if __name__ == "__main__":
    main()
