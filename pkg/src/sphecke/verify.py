"""Checks behind ``verify``: one function per acceptance criterion.

Every check returns a :class:`CheckResult`; tolerances are fixed here.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import coset_oracle as co
from .fock import moment_matrix_power, moment_path_sum, quantum_decomposition_check
from .hecke_algebra import (BasisTag, cell_volume, change_basis, convolve, phi, t_prime)
from .exactnum import QExt
from .plancherel import (eigen_residual, spherical_macdonald_exact, parseval_pair, pushforward_errors, random_element,
                         spherical_macdonald, verify_inversion, verify_unitary_identity)
from .polynomials import orthopoly, orthopoly_norm_sq
from .spectral import (integrate, kesten_density, moment_numeric, semicircle_density,
                       serre_density, stieltjes_cf, stieltjes_closed, stieltjes_inversion)
from .spectral import orthopoly_via_chebyshev

DEFAULT_QS = (2, 3, 5)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail.get('summary', '')}"

    def to_json(self) -> dict:
        return {"name": self.name, "passed": bool(self.passed), "detail": _jsonable(self.detail)}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    return obj


def check_cosets(qs=(2, 3), n_max: int = 4) -> CheckResult:
    bad = []
    for q in qs:
        for n in range(1, n_max + 1):
            count = len(co.enumerate_cell_cosets(q, n))
            if count != q ** (n - 1) * (q + 1) or count != cell_volume(q, n):
                bad.append(f"count q={q} n={n}: {count}")
            if not co.verify_recurrence(q, n):
                bad.append(f"recurrence q={q} n={n}")
    return CheckResult("1 coset certification", not bad,
                       {"failures": bad, "summary": f"q in {list(qs)}, n <= {n_max}, exact"})


def check_exact_algebra(qs=DEFAULT_QS, n_max: int = 20, seed: int = 0) -> CheckResult:
    bad = []
    rng = random.Random(seed)
    for q in qs:
        tp = t_prime(q)
        lhs = change_basis(convolve(tp, phi(q, 1)), BasisTag.Phi)
        if lhs.coeffs != {0: Fraction(q + 1, q), 2: 1}:
            bad.append(f"T'Phi_1 q={q}")
        for n in range(2, n_max + 1):
            got = change_basis(convolve(tp, phi(q, n)), BasisTag.Phi)
            if got.coeffs != {n - 1: 1, n + 1: 1}:
                bad.append(f"T'Phi_{n} q={q}")
        for _ in range(10):
            f = random_element(q, rng, 8, basis=rng.choice(list(BasisTag)))
            for tag in BasisTag:
                back = change_basis(change_basis(f, tag), f.basis)
                if back.coeffs != f.coeffs:
                    bad.append(f"round trip {f.basis.value}->{tag.value} q={q}")
    return CheckResult("2 exact algebra", not bad,
                       {"failures": bad, "summary": f"Phi relations n <= {n_max}, basis round trips, exact"})


def check_quantum_decomposition(qs=DEFAULT_QS, N: int = 25) -> CheckResult:
    res = {q: quantum_decomposition_check(q, N) for q in qs}
    return CheckResult("3 quantum decomposition", all(res.values()),
                       {"by_q": res, "summary": f"B+ + B- + B0 == R(T') exactly, N = {N}"})


def check_moments(qs=DEFAULT_QS, m_max: int = 20, rtol: float = 1e-9) -> CheckResult:
    worst = 0.0
    anchors_ok = True
    for q in qs:
        w = Fraction(q + 1, q)
        anchors_ok &= moment_path_sum(q, 2) == w and moment_path_sum(q, 4) == w * w + w
        for m in range(0, m_max + 1, 2):
            exact = float(moment_path_sum(q, m))
            mat = moment_matrix_power(q, m, m // 2 + 1)
            quad = moment_numeric(q, m)
            worst = max(worst, abs(mat - exact) / exact, abs(quad - exact) / exact)
    return CheckResult("4 moment triple agreement", anchors_ok and worst < rtol,
                       {"max_rel_err": worst, "anchors_ok": anchors_ok,
                        "summary": f"max rel err {worst:.2e} < {rtol:g}, anchors {'ok' if anchors_ok else 'BAD'}"})


def stieltjes_points(n: int = 20, seed: int = 0) -> list[complex]:
    rng = random.Random(seed)
    return [complex(rng.uniform(-3, 3), rng.uniform(0.1, 3.0)) for _ in range(n)]


def check_stieltjes(qs=DEFAULT_QS, tol: float = 1e-10, inv_tol: float = 1e-5, seed: int = 0) -> CheckResult:
    worst_cf = worst_quad = worst_inv = 0.0
    for q in qs:
        for z in stieltjes_points(20, seed):
            g = stieltjes_closed(q, z)
            worst_cf = max(worst_cf, abs(stieltjes_cf(q, z, 200) - g))
            worst_quad = max(worst_quad, abs(integrate(q, lambda x: 1 / (z - x)) - g))
        for k in range(-19, 20):
            x = k / 10
            worst_inv = max(worst_inv, abs(stieltjes_inversion(q, x, 1e-8) - kesten_density(q, x)))
    ok = worst_cf < tol and worst_quad < tol and worst_inv < inv_tol
    return CheckResult("5 Stieltjes coherence", ok,
                       {"cf": worst_cf, "quadrature": worst_quad, "inversion": worst_inv,
                        "summary": f"cf {worst_cf:.1e}, quad {worst_quad:.1e} (< {tol:g}); inversion {worst_inv:.1e} (< {inv_tol:g})"})


def check_orthopoly(qs=DEFAULT_QS, n_max: int = 15, n_int: int = 10, tol: float = 1e-8) -> CheckResult:
    exact_ok = all(orthopoly(q, n) == orthopoly_via_chebyshev(q, n) for q in qs for n in range(n_max + 1))
    worst = 0.0
    for q in qs:
        for m in range(n_int + 1):
            for n in range(m, n_int + 1):
                pm, pn = orthopoly(q, m), orthopoly(q, n)
                val = integrate(q, lambda x: pm(x) * pn(x))
                target = float(orthopoly_norm_sq(q, n)) if m == n else 0.0
                worst = max(worst, abs(val - target))
    return CheckResult("6 orthogonal polynomials", exact_ok and worst < tol,
                       {"exact_identity": exact_ok, "max_err": worst,
                        "summary": f"Chebyshev identity {'exact' if exact_ok else 'BROKEN'}, orthonormality err {worst:.1e} < {tol:g}"})


def spherical_grid(q: int, n_pts: int = 50) -> np.ndarray:
    period = 2 * math.pi / math.log(q)
    return (np.arange(n_pts) + 0.5) * period / n_pts


def check_spherical(qs=DEFAULT_QS, n_max: int = 28, tol: float = 1e-10) -> CheckResult:
    worst_eig = 0.0
    worst_abs = 0.0
    worst_unit = 0.0
    exact_ok = True
    for q in qs:
        for t in spherical_grid(q):
            worst_eig = max(worst_eig, eigen_residual(q, n_max + 1, t))
            worst_unit = max(worst_unit, abs(spherical_macdonald(q, 0, t) - 1))
            worst_abs = max(worst_abs, max(abs(spherical_macdonald(q, n, t)) for n in range(n_max + 1)))
        period = 2 * math.pi / math.log(q)
        for t in (0.0, period / 2, period):
            worst_abs = max(worst_abs, max(abs(spherical_macdonald(q, n, t)) for n in range(n_max + 1)))
        # exact arithmetic at rational z = q^s: normalisation and the eigen-recurrence
        for z in (Fraction(2), Fraction(1, 3), Fraction(-5, 7), Fraction(11, 4)):
            om = [spherical_macdonald_exact(q, n, z) for n in range(8)]
            lam = z + 1 / z
            exact_ok &= om[0] == 1
            exact_ok &= (q + 1) * QExt.q_half_power(q, -1) * om[1] == lam * om[0]
            for n in range(1, 7):
                exact_ok &= QExt.q_half_power(q, 1) * om[n + 1] + QExt.q_half_power(q, -1) * om[n - 1] == lam * om[n]
    bound_ok = worst_abs <= 1 + 1e-12
    ok = bool(worst_eig < tol and exact_ok and bound_ok)
    return CheckResult("7 spherical function", ok,
                       {"eigen_residual": worst_eig, "max_abs": worst_abs, "exact_identities": exact_ok,
                        "float_unit_residual": worst_unit,
                        "summary": (f"eigen residual {worst_eig:.1e} < {tol:g}, Omega(0)=1 exact: {exact_ok}, "
                                    f"max |Omega| - 1 = {worst_abs - 1:.1e}")})


def check_unitary(qs=DEFAULT_QS, N: int = 10, grid: int = 200, tol: float = 1e-9) -> CheckResult:
    reps = {q: verify_unitary_identity(q, N, grid, tol) for q in qs}
    worst = max(r["max_error"] for r in reps.values())
    return CheckResult("8 unitary identity", all(r["ok"] for r in reps.values()),
                       {"max_error": worst, "summary": f"F(Phi_n) = P_n(x), max err {worst:.1e} < {tol:g}"})


def check_inversion(qs=DEFAULT_QS, N: int = 10, tol: float = 1e-8, seed: int = 0) -> CheckResult:
    reps = {q: verify_inversion(q, N, tol, seed) for q in qs}
    rng = random.Random(seed + 1)
    parseval = 0.0
    for q in qs:
        for _ in range(5):
            f = random_element(q, rng)
            a, b = parseval_pair(f, f)
            parseval = max(parseval, abs(a - b) / max(1.0, abs(a)))
    push = max(max(pushforward_errors(q).values()) for q in qs)
    ok = all(r["ok"] for r in reps.values()) and parseval < tol and push < 1e-9
    worst = {k: max(r["errors"][k] for r in reps.values()) for k in next(iter(reps.values()))["errors"]}
    return CheckResult("9 Fourier inversion", ok,
                       {"errors": worst, "parseval": parseval, "pushforward": push,
                        "domain_readings": {q: r["domain_readings"] for q, r in reps.items()},
                        "summary": (f"inv {worst['inverse_after_forward']:.1e}, fwd {worst['forward_after_inverse']:.1e}, "
                                    f"parseval {parseval:.1e}, mass {worst['plancherel_mass']:.1e}, push {push:.1e}")})


def check_reference_densities(qs=DEFAULT_QS, tol: float = 1e-14, limit_tol: float = 1e-5) -> CheckResult:
    x = np.linspace(-2.5, 2.5, 2001)
    serre = max(float(np.max(np.abs(serre_density(q, x) - kesten_density(q, x)))) for q in qs)
    limit = float(np.max(np.abs(kesten_density(10 ** 6, x) - semicircle_density(x))))
    nonneg = all(float(np.min(kesten_density(q, np.linspace(-2, 2, 2000)))) >= 0 for q in qs)
    ok = serre <= tol and limit < limit_tol and nonneg
    return CheckResult("10 reference densities", ok,
                       {"serre_vs_kesten": serre, "semicircle_limit": limit,
                        "summary": f"serre-kesten {serre:.1e} <= {tol:g}, q=1e6 vs semicircle {limit:.1e} < {limit_tol:g}"})


ALL_CHECKS = {
    "cosets": check_cosets,
    "algebra": check_exact_algebra,
    "quantum": check_quantum_decomposition,
    "moments": check_moments,
    "stieltjes": check_stieltjes,
    "orthopoly": check_orthopoly,
    "spherical": check_spherical,
    "unitary": check_unitary,
    "inversion": check_inversion,
    "densities": check_reference_densities,
}


def run_all(qs=DEFAULT_QS, seed: int = 0) -> list[CheckResult]:
    out = []
    for name, fn in ALL_CHECKS.items():
        if name == "cosets":
            out.append(fn((2, 3)))
        elif name in ("algebra", "stieltjes", "inversion"):
            out.append(fn(qs, seed=seed))
        else:
            out.append(fn(qs))
    return out
