"""Spherical functions, the spherical Plancherel measure and the Fourier pair.

Points of the tempered spherical dual are s = i t with t in [0, 2 pi / log q];
the Hecke eigenvalue of T'(p) there is x = q^{-s} + q^{s} = 2 cos(t log q).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .exactnum import QExt, check_q
from .hecke_algebra import (BasisTag, HeckeElement, RadialFunction, cell_volume,
                            change_basis, element, inner_product, phi, radial_apply)
from .polynomials import Polynomial, orthopoly
from .spectral import integrate


class AccuracyError(RuntimeError):
    pass


SINGULAR_TOL = 1e-9


@dataclass(frozen=True)
class SpectralParam:
    q: int
    t: float

    def __post_init__(self):
        if not 0.0 <= self.t <= self.period(self.q) + 1e-12:
            raise ValueError(f"t = {self.t} outside [0, 2 pi / log q]")

    @staticmethod
    def period(q: int) -> float:
        return 2 * math.pi / math.log(q)

    @property
    def s(self) -> complex:
        return 1j * self.t

    @property
    def x(self) -> float:
        return 2 * math.cos(self.t * math.log(self.q))

    @classmethod
    def from_x(cls, q: int, x: float) -> "SpectralParam":
        """The point in the first half [0, pi/log q] with eigenvalue x."""
        return cls(q, math.acos(max(-1.0, min(1.0, x / 2))) / math.log(q))


def _t_of(s) -> np.ndarray:
    if isinstance(s, SpectralParam):
        return np.asarray(s.t, dtype=float)
    return np.asarray(s, dtype=float)


def _macdonald_raw(q: int, n: int, t: np.ndarray) -> np.ndarray:
    L = math.log(q)
    s = 1j * t
    u = np.exp(2 * s * L)  # q^{2s}
    # expm1 keeps 1 - q^{+-2s} accurate next to the removable points
    first = (1 - u / q) / -np.expm1(2 * s * L) * np.exp(-n * s * L)
    second = (1 - 1 / (q * u)) / -np.expm1(-2 * s * L) * np.exp(n * s * L)
    return q ** (-n / 2) / (1 + 1 / q) * (first + second)


def spherical_macdonald(q: int, n: int, s):
    """Omega_s on the n-th Cartan cell from the Macdonald formula.

    ``s`` is a SpectralParam or t = Im(s) (scalar or array).  At the removable
    singularities q^{2s} = 1 the value is the Richardson-extrapolated symmetric
    average at t +- delta, delta = 1e-5 / log q.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    t = _t_of(s)
    scalar = t.ndim == 0
    t = np.atleast_1d(t).astype(float)
    L = math.log(q)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = _macdonald_raw(q, n, t)
    bad = np.abs(1 - np.exp(2j * t * L)) < SINGULAR_TOL
    if bad.any():
        tb = t[bad]
        delta = 1e-5 / L
        avg = lambda d: (_macdonald_raw(q, n, tb + d) + _macdonald_raw(q, n, tb - d)) / 2
        out[bad] = (4 * avg(delta) - avg(2 * delta)) / 3
    return complex(out[0]) if scalar else out


def spherical_macdonald_exact(q: int, n: int, z: Fraction) -> QExt:
    """The Macdonald formula evaluated exactly at a rational value z of q^{s}.

    The formula is a rational function of z, so identities in s (normalisation,
    the eigen-recurrence) can be checked exactly at rational points z != +-1.
    """
    z = Fraction(z)
    u = z * z
    if u == 1 or z == 0:
        raise ValueError("z must avoid 0 and +-1")
    bracket = (1 - u / q) / (1 - u) * z ** (-n) + (1 - 1 / (q * u)) / (1 - 1 / u) * z ** n
    return QExt.q_half_power(q, -n) * (bracket / (1 + Fraction(1, q)))


def spherical_by_recurrence(q: int, n_max: int, s) -> RadialFunction:
    """Solve q^{1/2} W(n+1) + q^{-1/2} W(n-1) = x W(n) with W(0) = 1, W(1) = x q^{1/2}/(q+1)."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    t = float(_t_of(s))
    x = 2 * math.cos(t * math.log(q))
    rq = math.sqrt(q)
    w = np.empty(n_max + 1)
    w[0] = 1.0
    w[1] = x * rq / (q + 1)
    for n in range(1, n_max):
        w[n + 1] = (x * w[n] - w[n - 1] / rq) / rq
    return RadialFunction(q, w)


def spherical_samples(q: int, n_max: int, s) -> RadialFunction:
    t = float(_t_of(s))
    return RadialFunction(q, [spherical_macdonald(q, n, t) for n in range(n_max + 1)])


def plancherel_density(q: int, t):
    """Real density w(t) of dnu with respect to dt (ds = i dt)."""
    t = np.asarray(t, dtype=float)
    L = math.log(q)
    e = np.exp(-2j * t * L)
    out = (1 + 1 / q) * L / (4 * math.pi) * np.abs(1 - e) ** 2 / np.abs(1 - e / q) ** 2
    return float(out) if out.ndim == 0 else out


def _t_nodes(q: int, M: int, half: bool = False):
    period = SpectralParam.period(q) / (2 if half else 1)
    h = period / M
    t = (np.arange(M) + 0.5) * h
    return t, h


def integrate_nu(q: int, g: Callable, M: int = 256, half: bool = False):
    """Midpoint (= periodic trapezoid) rule for int g(t) dnu(t) over the full interval."""
    t, h = _t_nodes(q, M, half)
    return np.sum(g(t) * plancherel_density(q, t)) * h


def integrate_nu_adaptive(q: int, g: Callable, tol: float = 1e-12, M0: int = 64, M_max: int = 1 << 16):
    """Double the node count until successive results differ by less than tol / 10.

    The tolerance is relative once the integral exceeds 1 in size.
    """
    prev = integrate_nu(q, g, M0)
    M = M0
    while M < M_max:
        M *= 2
        cur = integrate_nu(q, g, M)
        if abs(cur - prev) < tol / 10 * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise AccuracyError(f"quadrature over t did not converge to {tol} with {M} nodes")


def plancherel_mass(q: int, M: int = 256) -> float:
    return float(integrate_nu(q, lambda t: np.ones_like(t), M))


@dataclass(frozen=True)
class PlancherelMeasure:
    q: int

    def density(self, t):
        return plancherel_density(self.q, t)

    @property
    def total_mass(self) -> float:
        return plancherel_mass(self.q)

    def integrate(self, g: Callable, tol: float = 1e-12):
        return integrate_nu_adaptive(self.q, g, tol)


# -- Fourier pair ----------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralPolynomial:
    """A polynomial in x = q^{-s} + q^{s}, exact QExt coefficients."""
    q: int
    poly: Polynomial

    @classmethod
    def monomial(cls, q: int, m: int) -> "SpectralPolynomial":
        return cls(q, Polynomial(tuple([Fraction(0)] * m + [Fraction(1)])))

    @classmethod
    def from_rational(cls, q: int, p: Polynomial) -> "SpectralPolynomial":
        return cls(q, p)

    @property
    def degree(self) -> int:
        return self.poly.degree

    def coeffs_float(self) -> np.ndarray:
        return np.array([float(c) for c in self.poly.coeffs])

    def __call__(self, x):
        return np.polynomial.polynomial.polyval(x, self.coeffs_float()) if self.poly.coeffs else 0 * x

    def at(self, s):
        t = _t_of(s)
        return self(2 * np.cos(t * math.log(self.q)))

    def __mul__(self, other: "SpectralPolynomial") -> "SpectralPolynomial":
        return SpectralPolynomial(self.q, self.poly * other.poly)

    def __eq__(self, other):
        if not isinstance(other, SpectralPolynomial):
            return NotImplemented
        n = max(len(self.poly.coeffs), len(other.poly.coeffs))
        return self.q == other.q and all(self.poly[k] == other.poly[k] for k in range(n))

    def to_text(self) -> str:
        return ",".join(QExt.embed(self.q, c).to_text() for c in self.poly.coeffs)


def fourier(f: HeckeElement) -> SpectralPolynomial:
    """F(f)(s) = int Omega_s(g) f(g) dg, exactly.

    F is the algebra map sending T'(p) to x, so F(f) is f read in the PolyInTPrime
    basis; in particular F(Phi_n) = P_n.
    """
    g = change_basis(f, BasisTag.PolyInTPrime)
    top = max(g.coeffs, default=-1)
    return SpectralPolynomial(f.q, Polynomial.from_seq([g[k] for k in range(top + 1)]))


def fourier_pointwise(q: int, cell_values, s) -> np.ndarray:
    """sum_n f(n) vol_n Omega_s(n) via the Macdonald formula (no polynomial algebra)."""
    t = np.atleast_1d(_t_of(s))
    acc = np.zeros(t.shape, dtype=complex)
    for n, v in enumerate(np.asarray(cell_values)):
        if v != 0:
            acc += v * float(cell_volume(q, n)) * spherical_macdonald(q, n, t)
    return acc


def fourier_numeric(q: int, cell_values) -> np.ndarray:
    """Float polynomial coefficients (in x) of F(f) for float cell values f(n)."""
    out = np.zeros(len(cell_values))
    for n, v in enumerate(np.asarray(cell_values, dtype=complex).real):
        pn = orthopoly(q, n).to_numpy()
        out[: len(pn)] += v * q ** (n / 2) * pn
    return out


def inverse_fourier(alpha: SpectralPolynomial, n_max: int, tol: float = 1e-12) -> RadialFunction:
    """F*(alpha)(n) = int Omega_s(n) alpha(x(s)) dnu(s) for n <= n_max.

    The result is returned as cell values, i.e. Psi-basis coefficients.
    """
    q = alpha.q
    if alpha.degree > n_max:
        raise ValueError("deg(alpha) must be <= n_max")
    vals = []
    for n in range(n_max + 1):
        g = lambda t, n=n: spherical_macdonald(q, n, t) * alpha.at(t)
        vals.append(integrate_nu_adaptive(q, g, tol))
    return RadialFunction(q, np.real(vals))


def cell_values(f: HeckeElement, n_max: int) -> np.ndarray:
    p = change_basis(f, BasisTag.Psi)
    return np.array([p[n].to_float() for n in range(n_max + 1)])


def random_element(q: int, rng: random.Random, max_support: int = 6, basis=BasisTag.Psi) -> HeckeElement:
    k = rng.randint(1, max_support)
    idx = rng.sample(range(max_support + 2), k)
    coeffs = {n: QExt(q, Fraction(rng.randint(-9, 9), rng.randint(1, 5)), Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
              for n in idx}
    return element(q, basis, coeffs)


# -- verification reports -------------------------------------------------------------

def _err(a, b) -> float:
    a, b = np.asarray(a), np.asarray(b)
    n = max(len(a), len(b))
    a = np.pad(a, (0, n - len(a)))
    b = np.pad(b, (0, n - len(b)))
    return float(np.max(np.abs(a - b))) if n else 0.0


def parseval_pair(f: HeckeElement, g: HeckeElement) -> tuple[float, float]:
    """(<f, g>_G exact, int F(f) conj F(g) dnu by quadrature)."""
    exact = inner_product(f, g).to_float()
    Ff, Fg = fourier(f), fourier(g)
    num = integrate_nu_adaptive(f.q, lambda t: Ff.at(t) * np.conj(Fg.at(t)))
    return exact, float(np.real(num))


def verify_inversion(q: int, N: int = 10, tol: float = 1e-8, seed: int = 0, n_random: int = 5) -> dict:
    check_q(q)
    rng = random.Random(seed)
    n_max = N + 2
    inv_err = []
    for n in range(N + 1):
        back = inverse_fourier(fourier(phi(q, n)), n_max)
        inv_err.append(_err(back.values.real, cell_values(phi(q, n), n_max)))
    fwd_err = []
    for m in range(N + 1):
        vals = inverse_fourier(SpectralPolynomial.monomial(q, m), n_max).values.real
        target = np.zeros(m + 1)
        target[m] = 1.0
        fwd_err.append(_err(fourier_numeric(q, vals), target))
    iso = []
    for _ in range(n_random):
        f, g = random_element(q, rng), random_element(q, rng)
        a, b = parseval_pair(f, g)
        iso.append(abs(a - b) / max(1.0, abs(a)))
    ortho = []
    for m in range(min(N, 6) + 1):
        for n in range(m + 1, min(N, 6) + 1):
            ortho.append(abs(parseval_pair(phi(q, m), phi(q, n))[1]))
    mass_full = plancherel_mass(q)
    mass_half = float(integrate_nu(q, lambda t: np.ones_like(t), 256, half=True))
    checks = {
        "inverse_after_forward": max(inv_err),
        "forward_after_inverse": max(fwd_err),
        "isometry": max(iso),
        "orthogonality": max(ortho) if ortho else 0.0,
        "plancherel_mass": abs(mass_full - 1.0),
    }
    passed = {k: v <= (1e-10 if k == "plancherel_mass" else tol) for k, v in checks.items()}
    return {
        "q": q, "N": N, "tol": tol, "seed": seed,
        "errors": checks, "passed": passed, "ok": all(passed.values()),
        "domain_readings": {"full_interval_mass": mass_full, "half_interval_mass": mass_half},
    }


def verify_unitary_identity(q: int, N: int = 10, grid: int = 200, tol: float = 1e-9) -> dict:
    """F(Phi_n)(s) computed from Macdonald values and cell volumes equals P_n(x(s))."""
    t, _ = _t_nodes(q, grid)
    x = 2 * np.cos(t * math.log(q))
    errs = {}
    for n in range(N + 1):
        lhs = fourier_pointwise(q, cell_values(phi(q, n), n), t)
        rhs = orthopoly(q, n)(x)
        errs[str(n)] = float(np.max(np.abs(lhs - rhs)))
    worst = max(errs.values())
    return {"q": q, "N": N, "grid": grid, "tol": tol, "errors": errs,
            "max_error": worst, "ok": worst < tol}


PUSHFORWARD_TESTS = {
    "1": lambda x: np.ones_like(x),
    "x": lambda x: x,
    "x^2": lambda x: x ** 2,
    "x^3": lambda x: x ** 3,
}


def pushforward_errors(q: int) -> dict[str, float]:
    """|int h(x(s)) dnu(s) - int h dmu| for six test functions h."""
    tests = dict(PUSHFORWARD_TESTS)
    tests["P2"] = orthopoly(q, 2)
    tests["P3"] = orthopoly(q, 3)
    L = math.log(q)
    out = {}
    for name, h in tests.items():
        lhs = integrate_nu_adaptive(q, lambda t, h=h: h(2 * np.cos(t * L)))
        rhs = integrate(q, h)
        out[name] = float(abs(lhs - rhs))
    return out


def eigen_residual(q: int, n_max: int, t) -> float:
    """max_n |R(T') Omega(n) - x Omega(n)| on Macdonald samples."""
    samp = spherical_samples(q, n_max, t)
    x = 2 * math.cos(float(t) * math.log(q))
    lhs = radial_apply(samp).values
    return float(np.max(np.abs(lhs - x * samp.values[:-1])))
