"""Brute-force coset enumeration for PGL_2 Hecke operators over Z_p.

Cosets K g of integral matrices with det generating p^n are represented by
Hermite normal forms [[p^a, b], [0, p^d]] with a + d = n and 0 <= b < p^d.
Everything is done with exact integers modulo a power of p, which is an
integral model of the p-adic cosets good enough for determinant p^n.

Restricted to prime q: residue fields F_{p^k} would need another model.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass

MAX_N = 6


class OracleResourceError(RuntimeError):
    pass


def _check(q: int, n: int, limit: int = MAX_N):
    if q < 2 or any(q % d == 0 for d in range(2, int(q ** 0.5) + 1)):
        raise ValueError(f"coset oracle needs prime q, got {q}")
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > limit:
        raise OracleResourceError(f"n = {n} exceeds oracle limit {limit}")


def valuation(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of 0")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True, order=True)
class CosetRep:
    a: int
    n: int
    b: int
    p: int

    @property
    def d(self) -> int:
        return self.n - self.a

    @property
    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.p ** self.a, self.b), (0, self.p ** self.d))

    @property
    def primitive(self) -> bool:
        return self.a == 0 or self.d == 0 or self.b % self.p != 0


def hnf(g, p: int) -> CosetRep:
    """Row-style Hermite normal form of K g, K = GL_2(Z_p), for integer g with det != 0."""
    (x, y), (z, w) = g
    det = x * w - y * z
    n = valuation(det, p)
    mod = p ** (n + 2)
    # pivot on the entry of the first column with the smaller valuation
    if x == 0 or (z != 0 and valuation(z, p) < valuation(x, p)):
        x, y, z, w = z, w, x, y
    a = valuation(x, p)
    ux = (x // p ** a) % mod
    inv = pow(ux, -1, mod)
    # row0 <- row0 / unit, so row0 = (p^a, y')
    y = (y * inv) % mod
    x = p ** a
    if z != 0:
        # z = p^a * t with t in Z_p since val(z) >= a
        t = (z // p ** a) % mod
        z, w = 0, (w - t * y) % mod
    d = n - a
    b = y % p ** d
    return CosetRep(a, n, b, p)


def enumerate_T_cosets(q: int, n: int) -> list[CosetRep]:
    """All K-cosets in the support of T(p^n) (modulo the centre)."""
    _check(q, n)
    return [CosetRep(a, n, b, q) for a in range(n + 1) for b in range(q ** (n - a))]


def enumerate_cell_cosets(q: int, n: int) -> list[CosetRep]:
    """Primitive cosets, i.e. the support of Psi_n."""
    return [r for r in enumerate_T_cosets(q, n) if r.primitive]


def _mul(g, h):
    (a, b), (c, d) = g
    (e, f), (gg, hh) = h
    return ((a * e + b * gg, a * f + b * hh), (c * e + d * gg, c * f + d * hh))


def convolution_multiplicities(q: int, n: int) -> Counter:
    """Multiplicity of each target coset K g in T(p) o T(p^n).

    (ch_A o ch_B)(g) = #{(i, j) : K alpha_i beta_j = K g} for A = U K alpha_i, B = U K beta_j.
    """
    counts: Counter = Counter()
    for r1 in enumerate_T_cosets(q, 1):
        for r2 in enumerate_T_cosets(q, n):
            counts[hnf(_mul(r1.matrix, r2.matrix), q)] += 1
    return counts


def verify_recurrence(q: int, n: int) -> bool:
    """T(p) o T(p^n) = T(p^{n+1}) + q T(p^{n-1}), checked coset by coset.

    At the matrix level the support of T(p^{n-1}) in PGL_2 is the image of the
    imprimitive cosets p * S_{n-1}, so those targets must carry weight 1 + q.
    """
    _check(q, n, limit=4)
    if n < 1:
        raise ValueError("recurrence is stated for n >= 1")
    got = convolution_multiplicities(q, n)
    expected: Counter = Counter({r: 1 for r in enumerate_T_cosets(q, n + 1)})
    for r in enumerate_T_cosets(q, n - 1):
        scaled = hnf(((q * r.matrix[0][0], q * r.matrix[0][1]), (0, q * r.matrix[1][1])), q)
        expected[scaled] += q
    return got == expected


def random_k(p: int, modulus: int, rng: random.Random):
    """A random integer matrix invertible over Z_p (det a p-adic unit)."""
    while True:
        m = tuple(tuple(rng.randrange(modulus) for _ in range(2)) for _ in range(2))
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        if det % p:
            return m


def cell_counts(q: int, n_max: int) -> dict[int, int]:
    return {n: len(enumerate_cell_cosets(q, n)) for n in range(n_max + 1)}


def report(q: int, n: int) -> dict:
    counts = {
        "t_cosets": {str(k): len(enumerate_T_cosets(q, k)) for k in range(n + 1)},
        "cell_cosets": {str(k): len(enumerate_cell_cosets(q, k)) for k in range(n + 1)},
    }
    rec = {str(k): verify_recurrence(q, k) for k in range(1, min(n, 4) + 1)}
    return {"q": q, "n": n, "counts": counts, "recurrence": rec,
            "recurrence_ok": all(rec.values())}
