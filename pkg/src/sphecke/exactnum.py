"""Exact scalars: rationals and the biquadratic field Q(sqrt q, sqrt(q+1)).

An element is stored as four rational coordinates ``(a, b, c, d)`` standing for
``a + b*sqrt(q) + c*sqrt(q+1) + d*sqrt(q*(q+1))``.  When ``q`` or ``q + 1`` is a
perfect square (e.g. q = 4, or q = 3 where sqrt(4) = 2) the corresponding
radical is folded into the rational part, so the coordinates are always a
canonical form and equality is coordinatewise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Fraction

Scalar = Union[int, Fraction, "QExt"]


class ContextError(ValueError):
    """Raised when values built over different ``q`` are combined."""


def _isqrt_exact(n: int) -> int | None:
    r = math.isqrt(n)
    return r if r * r == n else None


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1


def check_q(q: int) -> int:
    if not isinstance(q, int) or q < 2:
        raise ValueError(f"q must be an integer >= 2, got {q!r}")
    if not is_prime_power(q):
        raise ValueError(f"q must be a prime power, got {q}")
    return q


def _canonical(q, a, b, c, d):
    rq = _isqrt_exact(q)
    if rq is not None:
        a, b = a + b * rq, Fraction(0)
        c, d = c + d * rq, Fraction(0)
    rq1 = _isqrt_exact(q + 1)
    if rq1 is not None:
        a, c = a + c * rq1, Fraction(0)
        b, d = b + d * rq1, Fraction(0)
    return a, b, c, d


@dataclass(frozen=True, eq=False)
class QExt:
    q: int
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    d: Fraction = Fraction(0)

    def __post_init__(self):
        coords = _canonical(self.q, *(Fraction(v) for v in (self.a, self.b, self.c, self.d)))
        for name, v in zip("abcd", coords):
            object.__setattr__(self, name, v)

    # -- constructors -------------------------------------------------------
    @classmethod
    def embed(cls, q: int, x) -> "QExt":
        if isinstance(x, QExt):
            if x.q != q:
                raise ContextError(f"q mismatch: {x.q} vs {q}")
            return x
        return cls(q, Fraction(x))

    @classmethod
    def sqrt_q(cls, q: int) -> "QExt":
        return cls(q, 0, 1)

    @classmethod
    def sqrt_q1(cls, q: int) -> "QExt":
        return cls(q, 0, 0, 1)

    @classmethod
    def q_half_power(cls, q: int, k: int) -> "QExt":
        """q**(k/2) for any integer k."""
        whole, odd = divmod(k, 2)
        base = Fraction(q) ** whole
        return cls(q, 0, base) if odd else cls(q, base)

    # -- arithmetic ---------------------------------------------------------
    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def _coerce(self, other) -> "QExt":
        if isinstance(other, QExt):
            if other.q != self.q:
                raise ContextError(f"q mismatch: {self.q} vs {other.q}")
            return other
        if isinstance(other, (int, Fraction)):
            return QExt(self.q, Fraction(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QExt(self.q, self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return QExt(self.q, -self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        q, q1 = self.q, self.q + 1
        a1, b1, c1, d1 = self.coords
        a2, b2, c2, d2 = o.coords
        # basis 1, r = sqrt q, s = sqrt(q+1), rs
        a = a1 * a2 + q * b1 * b2 + q1 * c1 * c2 + q * q1 * d1 * d2
        b = a1 * b2 + b1 * a2 + q1 * (c1 * d2 + d1 * c2)
        c = a1 * c2 + c1 * a2 + q * (b1 * d2 + d1 * b2)
        d = a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2
        return QExt(q, a, b, c, d)

    __rmul__ = __mul__

    def conj(self, flip_q: bool, flip_q1: bool) -> "QExt":
        sb = -1 if flip_q else 1
        sc = -1 if flip_q1 else 1
        return QExt(self.q, self.a, sb * self.b, sc * self.c, sb * sc * self.d)

    def norm(self) -> Fraction:
        """Product of the four Galois conjugates (a rational number)."""
        prod = self * self.conj(True, False) * self.conj(False, True) * self.conj(True, True)
        assert prod.b == prod.c == prod.d == 0
        return prod.a

    def inv(self) -> "QExt":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero QExt")
        others = self.conj(True, False) * self.conj(False, True) * self.conj(True, True)
        n = (self * others).a
        return others.scale(1 / Fraction(n))

    def scale(self, r) -> "QExt":
        r = Fraction(r)
        return QExt(self.q, self.a * r, self.b * r, self.c * r, self.d * r)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self.scale(1 / Fraction(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out, base = QExt(self.q, 1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison / conversion ---------------------------------------------
    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.a == other
        if isinstance(other, QExt):
            return self.q == other.q and self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        return hash((self.q, self.coords))

    def conjugate(self) -> "QExt":
        # complex conjugation; every QExt is real
        return self

    def to_float(self) -> float:
        q = self.q
        return (float(self.a) + float(self.b) * math.sqrt(q)
                + float(self.c) * math.sqrt(q + 1) + float(self.d) * math.sqrt(q * (q + 1)))

    __float__ = to_float

    def __complex__(self):
        return complex(self.to_float())

    def to_text(self) -> str:
        return "(" + ",".join(str(v) for v in self.coords) + ")"

    def __repr__(self):
        if self.is_rational():
            return f"QExt[q={self.q}]({self.a})"
        return f"QExt[q={self.q}]{self.to_text()}"


def qext_add(x: QExt, y: QExt) -> QExt:
    return x + y


def qext_mul(x: QExt, y: QExt) -> QExt:
    return x * y


def qext_inv(x: QExt) -> QExt:
    return x.inv()


def to_float(x) -> float:
    return x.to_float() if isinstance(x, QExt) else float(x)


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def parse_qext(q: int, text: str) -> QExt:
    """Parse ``(a,b,c,d)`` or a bare rational like ``-3/2``."""
    text = text.strip()
    if text.startswith("("):
        if not text.endswith(")"):
            raise ValueError(f"unterminated QExt literal: {text!r}")
        parts = [p for p in text[1:-1].split(",")]
        if len(parts) != 4:
            raise ValueError(f"QExt literal needs 4 coordinates: {text!r}")
        return QExt(q, *(parse_rational(p) for p in parts))
    return QExt(q, parse_rational(text))
