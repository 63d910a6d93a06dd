"""Dense univariate polynomials with exact coefficients.

Coefficients may be ``Fraction`` or ``QExt``; index equals degree.  Used for the
Chebyshev polynomials of the second kind, the orthogonal family P_n attached to
the Jacobi data ((q+1)/q, 1, 1, ...), and polynomials in T'(p) or x.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np


def _is_zero(c) -> bool:
    return c == 0


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple = ()

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_seq(cls, coeffs: Sequence) -> "Polynomial":
        return cls(tuple(coeffs))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((Fraction(0), Fraction(1)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(self[k] + other[k] for k in range(n)))

    def __neg__(self):
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, r) -> "Polynomial":
        return Polynomial(tuple(c * r for c in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(tuple(out))

    def shift(self, k: int = 1) -> "Polynomial":
        """Multiply by x**k."""
        return Polynomial((0,) * k + self.coeffs) if self.coeffs else self

    def rescale_arg(self, r) -> "Polynomial":
        """p(r*x)."""
        return Polynomial(tuple(c * Fraction(r) ** k for k, c in enumerate(self.coeffs)))

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a float, complex, numpy array or exact scalar."""
        cs = self.coeffs if _exact(x) else [float(c) for c in self.coeffs]
        acc = 0
        for c in reversed(cs):
            acc = acc * x + c
        return acc

    def to_numpy(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs], dtype=float)

    def __repr__(self):
        if not self.coeffs:
            return "Polynomial(0)"
        terms = [f"{c}*x^{k}" for k, c in enumerate(self.coeffs) if not _is_zero(c)]
        return "Polynomial(" + " + ".join(terms) + ")"


def _exact(x) -> bool:
    return isinstance(x, (int, Fraction)) or hasattr(x, "coords")


@lru_cache(maxsize=None)
def chebyshev_u(n: int) -> Polynomial:
    """U_n(y) via U_0 = 1, U_1 = 2y, U_n = 2y U_{n-1} - U_{n-2}."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return Polynomial((Fraction(1),))
    if n == 1:
        return Polynomial((Fraction(0), Fraction(2)))
    return chebyshev_u(n - 1).shift().scale(2) - chebyshev_u(n - 2)


@lru_cache(maxsize=None)
def chebyshev_u_half(n: int) -> Polynomial:
    """U_n(x/2), a monic polynomial in x."""
    return chebyshev_u(n).rescale_arg(Fraction(1, 2))


def kesten_omega(q: int, n: int) -> Fraction:
    if n < 1:
        raise ValueError("omega is indexed from n = 1")
    return Fraction(q + 1, q) if n == 1 else Fraction(1)


@lru_cache(maxsize=None)
def orthopoly(q: int, n: int) -> Polynomial:
    """Monic P_n with P_{n+1} = x P_n - omega_n P_{n-1} (alpha = 0)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return Polynomial((Fraction(1),))
    if n == 1:
        return Polynomial.x()
    return orthopoly(q, n - 1).shift() - orthopoly(q, n - 2).scale(kesten_omega(q, n - 1))


def orthopoly_norm_sq(q: int, n: int) -> Fraction:
    out = Fraction(1)
    for j in range(1, n + 1):
        out *= kesten_omega(q, j)
    return out
