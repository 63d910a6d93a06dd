"""Fourier inversion / unitary-identity errors as a function of truncation N."""
import argparse
import json

from sphecke.plancherel import verify_inversion, verify_unitary_identity


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--qs", type=int, nargs="+", default=[2, 3, 5])
    ap.add_argument("--Ns", type=int, nargs="+", default=[4, 8, 12, 16])
    args = ap.parse_args()
    rows = []
    for q in args.qs:
        for N in args.Ns:
            inv = verify_inversion(q, N, tol=1e-8)
            uni = verify_unitary_identity(q, N)
            rows.append({"q": q, "N": N, **inv["errors"], "unitary": uni["max_error"]})
            print(json.dumps(rows[-1]))


if __name__ == "__main__":
    main()
