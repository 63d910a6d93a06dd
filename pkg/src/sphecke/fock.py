"""Interacting Fock space structure on H(G, K).

Jacobi data omega_1 = (q+1)/q, omega_n = 1 (n >= 2), alpha_n = 0.  Operators act
on the orthonormal basis e_n = Phi_n / ||Phi_n||.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactnum import QExt, check_q
from .hecke_algebra import radial_action_matrix
from .polynomials import kesten_omega


class TruncationError(ValueError):
    pass


@dataclass(frozen=True)
class JacobiCoefficients:
    q: int

    def omega(self, n: int) -> Fraction:
        return kesten_omega(self.q, n)

    def alpha(self, n: int) -> Fraction:
        return Fraction(0)

    def omegas(self, n_max: int) -> list[Fraction]:
        """[omega_1, ..., omega_{n_max}]."""
        return [self.omega(n) for n in range(1, n_max + 1)]


def sqrt_omega(q: int, n: int) -> QExt:
    # sqrt((q+1)/q) = sqrt(q(q+1)) / q
    return QExt(q, 0, 0, 0, Fraction(1, q)) if n == 1 else QExt(q, 1)


@dataclass(frozen=True)
class FockOperator:
    kind: str
    N: int
    entries: tuple  # (N+1) x (N+1) rows of QExt

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def to_numpy(self) -> np.ndarray:
        return np.array([[x.to_float() for x in row] for row in self.entries])

    def apply(self, n: int) -> dict[int, QExt]:
        """Image of e_n as {index: coefficient}."""
        return {i: row[n] for i, row in enumerate(self.entries) if not row[n].is_zero()}


def build_operators(q: int, N: int) -> tuple[FockOperator, FockOperator, FockOperator]:
    """(B+, B-, B0) truncated to span{e_0..e_N}."""
    check_q(q)
    if N < 2:
        raise ValueError("N must be >= 2")
    z = QExt(q)
    plus = [[z] * (N + 1) for _ in range(N + 1)]
    minus = [[z] * (N + 1) for _ in range(N + 1)]
    for n in range(N):
        w = sqrt_omega(q, n + 1)
        plus[n + 1][n] = w
        minus[n][n + 1] = w
    zero = [[z] * (N + 1) for _ in range(N + 1)]
    freeze = lambda m: tuple(tuple(r) for r in m)
    return (FockOperator("creation", N, freeze(plus)),
            FockOperator("annihilation", N, freeze(minus)),
            FockOperator("preservation", N, freeze(zero)))


def quantum_decomposition_check(q: int, N: int) -> bool:
    """B+ + B- + B0 == matrix of R(T'(p)) built by convolution, exactly."""
    bp, bm, b0 = build_operators(q, N)
    r = radial_action_matrix(q, N)
    for i in range(N + 1):
        for j in range(N + 1):
            if bp[i, j] + bm[i, j] + b0[i, j] != r[i][j]:
                return False
    return True


def moment_path_sum(q: int, m: int) -> Fraction:
    """Vacuum moment <T'^m Phi_0, Phi_0> as a weighted Dyck-path count.

    An up-step onto level k followed later by its matching down-step carries
    weight omega_k; dynamic programming over (step, level).
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if m > 30:
        raise ValueError("moment_path_sum supports m <= 30")
    jac = JacobiCoefficients(q)
    # weight each down-step from level k to k-1 by omega_k
    level = {0: Fraction(1)}
    for step in range(m):
        nxt: dict[int, Fraction] = {}
        remaining = m - step - 1
        for k, w in level.items():
            if k + 1 <= remaining:
                nxt[k + 1] = nxt.get(k + 1, Fraction(0)) + w
            if k >= 1:
                nxt[k - 1] = nxt.get(k - 1, Fraction(0)) + w * jac.omega(k)
        level = nxt
    return level.get(0, Fraction(0))


def jacobi_matrix(q: int, N: int) -> np.ndarray:
    """Float tridiagonal Jacobi matrix on e_0..e_N."""
    off = np.sqrt([float(kesten_omega(q, n)) for n in range(1, N + 1)])
    return np.diag(off, 1) + np.diag(off, -1)


def moment_matrix_power(q: int, m: int, N: int) -> float:
    """Entry (0,0) of J^m with J truncated at level N."""
    if N <= m / 2:
        raise TruncationError(f"N = {N} too small for m = {m}; need N > m/2")
    J = jacobi_matrix(q, N)
    v = np.zeros(N + 1)
    v[0] = 1.0
    for _ in range(m):
        v = J @ v
    return float(v[0])


def hankel_minors(moments: list[Fraction], k: int) -> list[Fraction]:
    """Leading principal minors of [m_{i+j}]_{i,j<=k}, exact."""
    size = k + 1
    A = [[Fraction(moments[i + j]) for j in range(size)] for i in range(size)]
    minors = []
    det = Fraction(1)
    for c in range(size):
        piv = A[c][c]
        if piv == 0:
            minors.extend([Fraction(0)] * (size - c))
            break
        det *= piv
        minors.append(det)
        for r in range(c + 1, size):
            f = A[r][c] / piv
            for cc in range(c, size):
                A[r][cc] -= f * A[c][cc]
    return minors
