"""Plot Kesten densities against the semicircle, and the Plancherel density over t.

Writes PNGs when matplotlib is available, CSV otherwise.
"""
import argparse
import math

import numpy as np

from sphecke.plancherel import SpectralParam, plancherel_density
from sphecke.spectral import kesten_density, semicircle_density, stieltjes_inversion


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--qs", type=int, nargs="+", default=[2, 3, 5, 49])
    ap.add_argument("--out", default="densities")
    args = ap.parse_args()
    xs = np.linspace(-2, 2, 801)
    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        plt = None

    if plt is None:
        with open(args.out + ".csv", "w") as fh:
            fh.write("x,semicircle," + ",".join(f"kesten_{q}" for q in args.qs) + "\n")
            for x in xs:
                fh.write(f"{x},{semicircle_density(x)}," + ",".join(str(kesten_density(q, x)) for q in args.qs) + "\n")
        return

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4))
    ax1.plot(xs, semicircle_density(xs), "k--", label="semicircle")
    for q in args.qs:
        ax1.plot(xs, kesten_density(q, xs), label=f"Kesten q={q}")
    probe = np.linspace(-1.9, 1.9, 20)
    ax1.plot(probe, [stieltjes_inversion(args.qs[0], x) for x in probe], "o", ms=3,
             label=f"Stieltjes inversion q={args.qs[0]}")
    ax1.set_xlabel("x")
    ax1.legend(fontsize=8)
    for q in args.qs:
        t = np.linspace(0, SpectralParam.period(q), 600)
        ax2.plot(t * math.log(q), plancherel_density(q, t) / math.log(q), label=f"q={q}")
    ax2.set_xlabel("t log q")
    ax2.set_ylabel("Plancherel density per unit t log q")
    ax2.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(args.out + ".png", dpi=120)
    print(f"wrote {args.out}.png")


if __name__ == "__main__":
    main()
