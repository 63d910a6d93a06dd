"""Print vacuum moments of T'(p) by all three routes for several q."""
import argparse

from sphecke.fock import moment_matrix_power, moment_path_sum
from sphecke.spectral import moment_numeric


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--qs", type=int, nargs="+", default=[2, 3, 5])
    ap.add_argument("--max-m", type=int, default=20)
    args = ap.parse_args()
    print(f"{'q':>3} {'m':>3} {'paths':>22} {'matrix':>22} {'quadrature':>22} {'rel.err':>9}")
    for q in args.qs:
        for m in range(0, args.max_m + 1, 2):
            exact = moment_path_sum(q, m)
            mat = moment_matrix_power(q, m, m // 2 + 1)
            quad = moment_numeric(q, m)
            err = max(abs(mat - float(exact)), abs(quad - float(exact))) / float(exact)
            print(f"{q:>3} {m:>3} {str(exact):>22} {mat:>22.12f} {quad:>22.12f} {err:>9.1e}")


if __name__ == "__main__":
    main()
