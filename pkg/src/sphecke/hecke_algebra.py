"""The spherical Hecke algebra H(G, K) for G = PGL_2(F), K = PGL_2(o).

Elements are finitely supported coefficient maps over one of five bases:

* ``T``            -- T(p^n), integral matrices with det generating p^n, mod centre
* ``Psi``          -- characteristic function of the Cartan cell K diag(w^n, 1) K
* ``Phi``          -- q^{-n/2} Psi_n
* ``NormalizedE``  -- Phi_n / ||Phi_n||
* ``PolyInTPrime`` -- coefficients of powers of T'(p) = q^{-1/2} T(p)

All conversions pass through the Phi basis.  Because Phi_n = P_n(T'(p)) with P_n
the monic orthogonal polynomials of the Kesten measure, the algebra is the
polynomial ring in T'(p) and convolution is polynomial multiplication.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np

from .exactnum import ContextError, QExt, check_q, parse_qext
from .polynomials import Polynomial, chebyshev_u_half, orthopoly


class BasisTag(str, enum.Enum):
    T = "T"
    Psi = "Psi"
    Phi = "Phi"
    NormalizedE = "NormalizedE"
    PolyInTPrime = "PolyInTPrime"


@dataclass(frozen=True, eq=False)
class HeckeElement:
    q: int
    basis: BasisTag
    coeffs: Mapping[int, QExt] = field(default_factory=dict)

    def __post_init__(self):
        basis = BasisTag(self.basis)
        clean = {}
        for n, c in self.coeffs.items():
            if n < 0:
                raise ValueError(f"negative index {n}")
            c = QExt.embed(self.q, c)
            if not c.is_zero():
                clean[int(n)] = c
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __getitem__(self, n: int) -> QExt:
        return self.coeffs.get(n, QExt(self.q))

    @property
    def support(self) -> list[int]:
        return list(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def to(self, target) -> "HeckeElement":
        return change_basis(self, target)

    def _check(self, other: "HeckeElement"):
        if other.q != self.q:
            raise ContextError(f"q mismatch: {self.q} vs {other.q}")

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        other = change_basis(other, self.basis)
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, QExt(self.q)) + c
        return HeckeElement(self.q, self.basis, out)

    def __neg__(self):
        return HeckeElement(self.q, self.basis, {n: -c for n, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, r) -> "HeckeElement":
        r = QExt.embed(self.q, r)
        return HeckeElement(self.q, self.basis, {n: c * r for n, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return convolve(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __matmul__(self, other):
        return convolve(self, other)

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        if other.q != self.q:
            return False
        return change_basis(other, self.basis).coeffs == self.coeffs

    def __hash__(self):
        phi = change_basis(self, BasisTag.Phi)
        return hash((self.q, tuple(phi.coeffs.items())))

    def to_text(self) -> str:
        body = ",".join(f"{n}:{c.to_text()}" for n, c in self.coeffs.items())
        return f"{self.basis.value}:{{{body}}}"

    def __repr__(self):
        return f"HeckeElement[q={self.q}]({self.to_text()})"


# -- constructors ------------------------------------------------------------

def element(q: int, basis, coeffs: Mapping) -> HeckeElement:
    return HeckeElement(check_q(q), BasisTag(basis), coeffs)


def unit(q: int) -> HeckeElement:
    """ch_K, the unit for convolution."""
    return element(q, BasisTag.T, {0: 1})


def hecke_T(q: int, n: int) -> HeckeElement:
    return element(q, BasisTag.T, {n: 1})


def psi(q: int, n: int) -> HeckeElement:
    return element(q, BasisTag.Psi, {n: 1})


def phi(q: int, n: int) -> HeckeElement:
    return element(q, BasisTag.Phi, {n: 1})


def normalized_e(q: int, n: int) -> HeckeElement:
    return element(q, BasisTag.NormalizedE, {n: 1})


def t_prime(q: int) -> HeckeElement:
    """T'(p) = q^{-1/2} T(p)."""
    return element(q, BasisTag.PolyInTPrime, {1: 1})


# -- basis changes -------------------------------------------------------------

def phi_norm(q: int, n: int) -> QExt:
    """||Phi_n|| = 1 for n = 0 and sqrt((q+1)/q) otherwise."""
    if n == 0:
        return QExt(q, 1)
    return QExt(q, 0, 0, 0, Fraction(1, q))  # sqrt(q(q+1))/q


def _to_phi(f: HeckeElement) -> dict[int, QExt]:
    q = f.q
    zero = QExt(q)
    if f.basis is BasisTag.Phi:
        return dict(f.coeffs)
    if f.basis is BasisTag.Psi:
        return {n: c * QExt.q_half_power(q, n) for n, c in f.coeffs.items()}
    if f.basis is BasisTag.T:
        psi_c: dict[int, QExt] = {}
        for n, c in f.coeffs.items():
            for m in range(n, -1, -2):
                psi_c[m] = psi_c.get(m, zero) + c
        return _to_phi(HeckeElement(q, BasisTag.Psi, psi_c))
    if f.basis is BasisTag.NormalizedE:
        return {n: c / phi_norm(q, n) for n, c in f.coeffs.items()}
    if f.basis is BasisTag.PolyInTPrime:
        return _poly_to_phi(q, Polynomial.from_seq([f[k] for k in range(max(f.coeffs, default=-1) + 1)]))
    raise ValueError(f.basis)


def _poly_to_phi(q: int, p: Polynomial) -> dict[int, QExt]:
    out: dict[int, QExt] = {}
    while p.coeffs:
        n = p.degree
        lead = QExt.embed(q, p.coeffs[-1])
        out[n] = lead
        p = p - orthopoly(q, n).scale(lead)
    return out


def _from_phi(q: int, phi_c: dict[int, QExt], target: BasisTag) -> dict[int, QExt]:
    zero = QExt(q)
    if target is BasisTag.Phi:
        return dict(phi_c)
    if target is BasisTag.Psi:
        return {n: c * QExt.q_half_power(q, -n) for n, c in phi_c.items()}
    if target is BasisTag.T:
        psi_c = _from_phi(q, phi_c, BasisTag.Psi)
        out: dict[int, QExt] = {}
        for n, c in psi_c.items():
            out[n] = out.get(n, zero) + c
            if n >= 2:
                out[n - 2] = out.get(n - 2, zero) - c
        return out
    if target is BasisTag.NormalizedE:
        return {n: c * phi_norm(q, n) for n, c in phi_c.items()}
    if target is BasisTag.PolyInTPrime:
        acc = Polynomial(())
        for n, c in phi_c.items():
            acc = acc + orthopoly(q, n).scale(c)
        return {k: QExt.embed(q, c) for k, c in enumerate(acc.coeffs)}
    raise ValueError(target)


def change_basis(f: HeckeElement, target) -> HeckeElement:
    target = BasisTag(target)
    if f.basis is target:
        return f
    return HeckeElement(f.q, target, _from_phi(f.q, _to_phi(f), target))


def t_power_in_tprime(q: int, n: int) -> HeckeElement:
    """T(p^n) written as q^{n/2} U_n(T'/2) in the PolyInTPrime basis."""
    u = chebyshev_u_half(n).scale(QExt.q_half_power(q, n))
    return HeckeElement(q, BasisTag.PolyInTPrime, dict(enumerate(u.coeffs)))


# -- algebra ---------------------------------------------------------------------

def _as_poly(f: HeckeElement) -> Polynomial:
    g = change_basis(f, BasisTag.PolyInTPrime)
    top = max(g.coeffs, default=-1)
    return Polynomial.from_seq([g[k] for k in range(top + 1)])


def convolve(f: HeckeElement, g: HeckeElement) -> HeckeElement:
    """f o g, computed as a product of polynomials in T'(p); result in f's basis."""
    if f.q != g.q:
        raise ContextError(f"q mismatch: {f.q} vs {g.q}")
    prod = _as_poly(f) * _as_poly(g)
    h = HeckeElement(f.q, BasisTag.PolyInTPrime, dict(enumerate(prod.coeffs)))
    return change_basis(h, f.basis)


def star(f: HeckeElement) -> HeckeElement:
    """f*(g) = conj(f(g^{-1})); elements are inverse-symmetric so this conjugates coefficients."""
    return HeckeElement(f.q, f.basis, {n: c.conjugate() for n, c in f.coeffs.items()})


def cell_volume(q: int, n: int) -> Fraction:
    """vol(K diag(w^n, 1) K) with vol(K) = 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return Fraction(1) if n == 0 else Fraction(q ** (n - 1) * (q + 1))


def inner_product(f: HeckeElement, g: HeckeElement) -> QExt:
    if f.q != g.q:
        raise ContextError(f"q mismatch: {f.q} vs {g.q}")
    fp, gp = change_basis(f, BasisTag.Psi), change_basis(g, BasisTag.Psi)
    out = QExt(f.q)
    for n, c in fp.coeffs.items():
        if n in gp.coeffs:
            out = out + c * gp.coeffs[n].conjugate() * cell_volume(f.q, n)
    return out


def radial_action_matrix(q: int, n_max: int) -> list[list[QExt]]:
    """Matrix of f -> T'(p) o f on span{e_0..e_{n_max}}, column j = image of e_j.

    Built by actual convolution; the component pushed to e_{n_max+1} is dropped.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    check_q(q)
    tp = t_prime(q)
    size = n_max + 1
    mat = [[QExt(q) for _ in range(size)] for _ in range(size)]
    for j in range(size):
        img = change_basis(convolve(tp, normalized_e(q, j)), BasisTag.NormalizedE)
        for i, c in img.coeffs.items():
            if i < size:
                mat[i][j] = c
    return mat


# -- radial functions -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RadialFunction:
    """A K-biinvariant function sampled on the Cartan cells 0..n_max."""
    q: int
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=complex))

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __len__(self):
        return len(self.values)


def radial_apply(f: RadialFunction) -> RadialFunction:
    """(R(T'(p)) f)(n) from the coset decomposition of the support of T(p).

    For n >= 1, q of the q+1 cosets move one cell outward and one moves inward;
    from the identity cell all q+1 move to cell 1.  Output drops the last index.
    """
    v = f.values
    if len(v) < 2:
        raise ValueError("radial_apply needs at least two samples")
    q = f.q
    rq = np.sqrt(q)
    out = np.empty(len(v) - 1, dtype=complex)
    out[0] = (q + 1) / rq * v[1]
    out[1:] = rq * v[2:] + v[:-2] / rq
    return RadialFunction(q, out)


def to_radial(f: HeckeElement, n_max: int | None = None) -> RadialFunction:
    """Cell values of f (its Psi coefficients) as floats."""
    p = change_basis(f, BasisTag.Psi)
    top = max(p.coeffs, default=0) if n_max is None else n_max
    vals = [p[n].to_float() for n in range(top + 1)]
    return RadialFunction(f.q, vals)


# -- text form ----------------------------------------------------------------------

_TEXT_RE = re.compile(r"^\s*(\w+)\s*:\s*\{(.*)\}\s*$", re.S)
_TERM_RE = re.compile(r"\s*(\d+)\s*:\s*(\([^)]*\)|[^,]+)\s*(?:,|$)")


def parse_element(q: int, text: str) -> HeckeElement:
    """Parse ``basis:{n:coeff,...}``; coeff is ``(a,b,c,d)`` or a rational."""
    m = _TEXT_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse Hecke element {text!r}")
    basis, body = m.groups()
    try:
        tag = BasisTag(basis)
    except ValueError:
        raise ValueError(f"unknown basis {basis!r}; expected one of {[b.value for b in BasisTag]}") from None
    coeffs: dict[int, QExt] = {}
    pos = 0
    body = body.strip()
    while pos < len(body):
        t = _TERM_RE.match(body, pos)
        if not t or t.end() == pos:
            raise ValueError(f"bad term near {body[pos:]!r}")
        n = int(t.group(1))
        coeffs[n] = coeffs.get(n, QExt(q)) + parse_qext(q, t.group(2))
        pos = t.end()
    return HeckeElement(check_q(q), tag, coeffs)
