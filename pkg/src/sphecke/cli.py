"""Command-line front end: ``sphecke <command> [flags]``.

Exact values are emitted as strings ("15/4", QExt 4-tuples "(a,b,c,d)").
Exit status: 0 ok, 1 a numerical check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import coset_oracle, fock, plancherel, spectral, verify
from .exactnum import check_q
from .hecke_algebra import parse_element

FORMATS = ("json", "csv", "text")


@dataclass
class RunConfig:
    q: int | None
    N: int
    nodes: int
    tol: float
    format: str
    out: str
    seed: int

    def __post_init__(self):
        if self.q is not None and self.q < 2:
            raise ValueError("q must be >= 2")
        if self.N < 2:
            raise ValueError("N must be >= 2")
        if self.tol <= 0:
            raise ValueError("tol must be > 0")


def _common(p: argparse.ArgumentParser, N: int = 10, tol: float = 1e-8, fmt: str = "json"):
    p.add_argument("--q", type=int, default=None, help="residue field size (prime power)")
    p.add_argument("--N", type=int, default=N, help="truncation level")
    p.add_argument("--nodes", type=int, default=spectral.DEFAULT_NODES, help="quadrature nodes")
    p.add_argument("--tol", type=float, default=tol)
    p.add_argument("--format", choices=FORMATS, default=fmt)
    p.add_argument("--out", default="-", help="output file, '-' for stdout")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sphecke", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", help="vacuum moments of T'(p)")
    _common(p)
    p.add_argument("--max-m", type=int, default=10)
    p.add_argument("--method", choices=("paths", "matrix", "quadrature", "all"), default="all")

    p = sub.add_parser("density", help="Kesten density with reference densities")
    _common(p, fmt="csv")
    p.add_argument("--grid", type=int, default=401)

    p = sub.add_parser("stieltjes", help="Stieltjes transform at a point z")
    _common(p)
    p.add_argument("--z", required=True, help="complex point, e.g. 0.5+1i")
    p.add_argument("--depth", type=int, default=200)

    p = sub.add_parser("spherical", help="spherical function values")
    _common(p)
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--t", type=float, default=None, help="Im(s); omit with --grid for a CSV sweep")
    p.add_argument("--grid", type=int, default=0, help="number of t grid points for a CSV dump")

    p = sub.add_parser("fourier", help="spherical Fourier transform of a Hecke element")
    _common(p)
    p.add_argument("--elem", required=True, help="e.g. 'Phi:{2:1}' or 'T:{1:(1,0,0,0)}'")

    p = sub.add_parser("verify", help="verification suite")
    vsub = p.add_subparsers(dest="target", required=True)
    v = vsub.add_parser("cosets")
    _common(v)
    v.add_argument("--n", type=int, default=4)
    v = vsub.add_parser("inversion")
    _common(v)
    v = vsub.add_parser("all")
    _common(v, fmt="text")
    return ap


def _config(args) -> RunConfig:
    return RunConfig(args.q, args.N, args.nodes, args.tol, args.format, args.out, args.seed)


def _emit(cfg: RunConfig, payload, csv_rows=None, text=None):
    if cfg.format == "csv" and csv_rows is not None:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for row in csv_rows:
            w.writerow(row)
        out = buf.getvalue()
    elif cfg.format == "text" and text is not None:
        out = text + "\n"
    else:
        out = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if cfg.out == "-":
        sys.stdout.write(out)
    else:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(out)


def _q(cfg: RunConfig, default: int = 2) -> int:
    return check_q(cfg.q if cfg.q is not None else default)


def cmd_moments(args, cfg):
    q = _q(cfg)
    methods = ("paths", "matrix", "quadrature") if args.method == "all" else (args.method,)
    rows = []
    for m in range(args.max_m + 1):
        row = {"m": m}
        if "paths" in methods:
            row["paths"] = str(fock.moment_path_sum(q, m))
        if "matrix" in methods:
            row["matrix"] = fock.moment_matrix_power(q, m, max(cfg.N, m // 2 + 1))
        if "quadrature" in methods:
            row["quadrature"] = spectral.moment_numeric(q, m, cfg.nodes)
        rows.append(row)
    header = ["m", *methods]
    csv_rows = [header] + [[r[k] for k in header] for r in rows]
    _emit(cfg, {"command": "moments", "q": q, "rows": rows}, csv_rows)
    return 0


def cmd_density(args, cfg):
    q = _q(cfg)
    if args.grid < 2:
        raise ValueError("--grid must be >= 2")
    xs = np.linspace(-2, 2, args.grid)
    k = spectral.kesten_density(q, xs)
    sc = spectral.semicircle_density(xs)
    se = spectral.serre_density(q, xs)
    rows = [{"x": float(a), "kesten": float(b), "semicircle": float(c), "serre": float(d)}
            for a, b, c, d in zip(xs, k, sc, se)]
    csv_rows = [["x", "kesten", "semicircle", "serre"]] + [[repr(r[c]) for c in ("x", "kesten", "semicircle", "serre")] for r in rows]
    _emit(cfg, {"command": "density", "q": q, "rows": rows}, csv_rows)
    return 0


def _parse_z(text: str) -> complex:
    return complex(text.replace(" ", "").replace("i", "j"))


def cmd_stieltjes(args, cfg):
    q = _q(cfg)
    z = _parse_z(args.z)
    closed = spectral.stieltjes_closed(q, z)
    out = {"command": "stieltjes", "q": q, "z": [z.real, z.imag],
           "closed": [closed.real, closed.imag]}
    if z.imag != 0:
        cf = spectral.stieltjes_cf(q, z, args.depth)
        quad = complex(spectral.integrate(q, lambda x: 1 / (z - x), cfg.nodes))
        out["cf"] = [cf.real, cf.imag]
        out["quadrature"] = [quad.real, quad.imag]
    _emit(cfg, out)
    return 0


def cmd_spherical(args, cfg):
    q = _q(cfg)
    n = args.n
    if args.grid:
        ts = (np.arange(args.grid) + 0.5) * plancherel.SpectralParam.period(q) / args.grid
        header = ["t", "w"] + [f"omega_{k}" for k in range(n + 1)]
        rows = []
        for t in ts:
            vals = [plancherel.spherical_macdonald(q, k, t).real for k in range(n + 1)]
            rows.append([float(t), plancherel.plancherel_density(q, t), *vals])
        payload = {"command": "spherical", "q": q, "n": n,
                   "grid": [dict(zip(header, r)) for r in rows]}
        _emit(cfg, payload, [header] + [[repr(float(v)) for v in r] for r in rows])
        return 0
    if args.t is None:
        raise ValueError("spherical needs --t or --grid")
    s = plancherel.SpectralParam(q, args.t)
    mac = [plancherel.spherical_macdonald(q, k, s).real for k in range(n + 1)]
    rec = plancherel.spherical_by_recurrence(q, max(n, 1), s).values.real[: n + 1]
    payload = {"command": "spherical", "q": q, "n": n, "t": args.t, "x": s.x,
               "plancherel_density": plancherel.plancherel_density(q, args.t),
               "macdonald": mac, "recurrence": [float(v) for v in rec]}
    _emit(cfg, payload)
    return 0


def cmd_fourier(args, cfg):
    q = _q(cfg)
    f = parse_element(q, args.elem)
    F = plancherel.fourier(f)
    payload = {"command": "fourier", "q": q, "element": f.to_text(),
               "coefficients": [plancherel.QExt.embed(q, c).to_text() for c in F.poly.coeffs],
               "float_coefficients": [float(c) for c in F.poly.coeffs]}
    _emit(cfg, payload)
    return 0


def cmd_verify(args, cfg):
    if args.target == "cosets":
        q = _q(cfg)
        rep = coset_oracle.report(q, args.n)
        _emit(cfg, {"command": "verify_cosets", **rep})
        return 0 if rep["recurrence_ok"] else 1
    if args.target == "inversion":
        q = _q(cfg)
        rep = plancherel.verify_inversion(q, cfg.N, cfg.tol, cfg.seed)
        rep["domain_readings"] = {k: float(v) for k, v in rep["domain_readings"].items()}
        _emit(cfg, {"command": "verify_inversion", **rep})
        return 0 if rep["ok"] else 1
    qs = (check_q(cfg.q),) if cfg.q is not None else verify.DEFAULT_QS
    results = verify.run_all(qs, seed=cfg.seed)
    failed = [r.name for r in results if not r.passed]
    payload = {"command": "verify_all", "qs": list(qs), "ok": not failed, "failed": failed,
               "checks": [r.to_json() for r in results]}
    text = "\n".join(r.line() for r in results)
    text += "\nALL PASSED" if not failed else "\nFAILED: " + ", ".join(failed)
    _emit(cfg, payload, text=text)
    return 0 if not failed else 1


COMMANDS = {"moments": cmd_moments, "density": cmd_density, "stieltjes": cmd_stieltjes,
            "spherical": cmd_spherical, "fourier": cmd_fourier, "verify": cmd_verify}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except (ValueError, coset_oracle.OracleResourceError, fock.TruncationError) as exc:
        parser.exit(2, f"sphecke: error: {exc}\n")


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
