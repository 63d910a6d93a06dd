"""The Kesten (free Meixner) spectral measure of T'(p) in the vacuum state.

    dmu(x) = (q+1) / ((q^{1/2} + q^{-1/2})^2 - x^2) * sqrt(4 - x^2) / (2 pi) dx  on [-2, 2]
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .polynomials import Polynomial, chebyshev_u, chebyshev_u_half, orthopoly, orthopoly_norm_sq

__all__ = [
    "SpectralMeasure", "kesten_density", "semicircle_density", "serre_density",
    "reference_density", "stieltjes_cf", "stieltjes_closed", "stieltjes_inversion",
    "integrate", "moment_numeric", "chebyshev_u", "orthopoly", "Polynomial",
]

DEFAULT_NODES = 4096


def _edge_sq(q: float) -> float:
    # (q^{1/2} + q^{-1/2})^2 = q + 2 + 1/q
    return q + 2.0 + 1.0 / q


def kesten_density(q, x):
    """Density of dmu; vectorised over ``x``, zero outside [-2, 2]."""
    x = np.asarray(x, dtype=float)
    inside = np.abs(x) < 2.0
    xs = np.where(inside, x, 0.0)
    val = (q + 1) / (_edge_sq(q) - xs ** 2) * np.sqrt(4.0 - xs ** 2) / (2 * math.pi)
    out = np.where(inside, val, 0.0)
    return float(out) if out.ndim == 0 else out


def semicircle_density(x):
    x = np.asarray(x, dtype=float)
    inside = np.abs(x) < 2.0
    out = np.where(inside, np.sqrt(np.clip(4.0 - x ** 2, 0.0, None)) / (2 * math.pi), 0.0)
    return float(out) if out.ndim == 0 else out


def serre_density(p, x):
    """Vertical Sato-Tate density with parameter p + 1, written as in the Serre form."""
    x = np.asarray(x, dtype=float)
    inside = np.abs(x) < 2.0
    xs = np.where(inside, x, 0.0)
    val = (p + 1) / ((p ** 0.5 + p ** -0.5) ** 2 - xs ** 2) * np.sqrt(4.0 - xs ** 2) / (2 * math.pi)
    out = np.where(inside, val, 0.0)
    return float(out) if out.ndim == 0 else out


def reference_density(x, kind: str, p: int | None = None):
    if kind == "semicircle":
        return semicircle_density(x)
    if kind == "serre":
        if p is None:
            raise ValueError("serre density needs p")
        return serre_density(p, x)
    raise ValueError(f"unknown reference density {kind!r}")


def _sqrt_z2m4(z: complex) -> complex:
    """Branch of sqrt(z^2 - 4) analytic off [-2, 2], positive for z > 2, ~ z at infinity."""
    return cmath.sqrt(z - 2) * cmath.sqrt(z + 2)


def stieltjes_cf(q: int, z: complex, depth: int = 200, tail: str = "zero") -> complex:
    """Truncated continued fraction 1/(z - w1/(z - 1/(z - ...))) with ``depth`` levels.

    Evaluated bottom-up.  ``tail="zero"`` cuts the fraction off; ``tail="periodic"``
    closes it with the fixed point of the periodic part, which makes it exact.
    """
    z = complex(z)
    if z.imag == 0:
        raise ValueError("stieltjes_cf needs Im(z) != 0")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if tail == "zero":
        t = 0j
    elif tail == "periodic":
        t = (z - _sqrt_z2m4(z)) / 2
    else:
        raise ValueError(f"unknown tail {tail!r}")
    for _ in range(depth - 1):
        t = 1 / (z - t)
    w1 = (q + 1) / q
    return 1 / (z - w1 * t)


def stieltjes_closed(q: int, z: complex) -> complex:
    """G(z) = ((2-w)z - w sqrt(z^2-4)) / (2(1-w)z^2 + 2w^2), w = (q+1)/q.

    The denominator vanishes at z = +-(q^{1/2}+q^{-1/2}) where the numerator does
    too; there the equivalent form 2 / ((2-w)z + w sqrt(z^2-4)) is used.
    """
    z = complex(z)
    if z.imag == 0 and abs(z.real) <= 2:
        raise ValueError("z lies on the cut [-2, 2]")
    w = (q + 1) / q
    r = _sqrt_z2m4(z)
    den = 2 * (1 - w) * z * z + 2 * w * w
    if abs(den) < 1e-6 * (1 + abs(z) ** 2):
        return 2 / ((2 - w) * z + w * r)
    return ((2 - w) * z - w * r) / den


def stieltjes_inversion(q: int, x: float, eps: float = 1e-8, richardson: bool = True) -> float:
    """-(1/pi) Im G(x + i eps), optionally Richardson-extrapolated with 2 eps."""
    f = lambda e: -stieltjes_closed(q, complex(x, e)).imag / math.pi
    if not richardson:
        return f(eps)
    return 2 * f(eps) - f(2 * eps)


def _nodes(q: int, M: int):
    """Nodes x_k = 2 cos(theta_k) and weights for int f dmu (midpoint rule in theta)."""
    theta = (np.arange(M) + 0.5) * math.pi / M
    x = 2 * np.cos(theta)
    w = (q + 1) / (_edge_sq(q) - x ** 2) * (2 / math.pi) * np.sin(theta) ** 2 * (math.pi / M)
    return x, w


def integrate(q: int, f: Callable, M: int = DEFAULT_NODES):
    """int f dmu via x = 2 cos(theta); the integrand becomes smooth and periodic."""
    x, w = _nodes(q, M)
    vals = np.asarray(f(x))
    return np.sum(w * vals)


def moment_numeric(q: int, m: int, M: int = DEFAULT_NODES) -> float:
    if m > 40:
        raise ValueError("moment_numeric supports m <= 40")
    return float(integrate(q, lambda x: x ** m, M))


@dataclass(frozen=True)
class SpectralMeasure:
    q: int
    nodes: int = DEFAULT_NODES

    support = (-2.0, 2.0)

    def density(self, x):
        return kesten_density(self.q, x)

    def integrate(self, f: Callable):
        return integrate(self.q, f, self.nodes)

    def moment(self, m: int) -> float:
        return moment_numeric(self.q, m, self.nodes)

    def mass(self) -> float:
        return float(self.integrate(lambda x: np.ones_like(x)))

    def stieltjes(self, z: complex) -> complex:
        return stieltjes_closed(self.q, z)

    def quadrature(self):
        return _nodes(self.q, self.nodes)


def orthopoly_via_chebyshev(q: int, n: int) -> Polynomial:
    """U_n(x/2) - q^{-1} U_{n-2}(x/2) for n >= 2, U_n(x/2) for n < 2."""
    if n < 2:
        return chebyshev_u_half(n)
    return chebyshev_u_half(n) - chebyshev_u_half(n - 2).scale(Fraction(1, q))
