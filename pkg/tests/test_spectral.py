import cmath
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate as sci

from sphecke.fock import moment_path_sum
from sphecke.polynomials import Polynomial, chebyshev_u, orthopoly, orthopoly_norm_sq
from sphecke.spectral import (SpectralMeasure, integrate, kesten_density, moment_numeric,
                              orthopoly_via_chebyshev, reference_density, semicircle_density,
                              serre_density, stieltjes_cf, stieltjes_closed, stieltjes_inversion)


def quad_mu(q, f):
    """Adaptive quadrature against the raw density: independent of the theta substitution."""
    re = sci.quad(lambda x: (f(x) * kesten_density(q, x)).real, -2, 2, limit=200, epsabs=1e-14, epsrel=1e-13)[0]
    im = sci.quad(lambda x: complex(f(x) * kesten_density(q, x)).imag, -2, 2, limit=200, epsabs=1e-14, epsrel=1e-13)[0]
    return complex(re, im)


def test_density_examples():
    assert kesten_density(2, 2.0) == 0 and kesten_density(2, -2.0) == 0
    assert kesten_density(2, 3.0) == 0
    assert kesten_density(2, 0.0) == pytest.approx(2 / (3 * math.pi), abs=1e-12)
    assert kesten_density(2, 0.0) == pytest.approx(0.21220659, abs=1e-8)


def test_density_nonnegative_and_mass(q):
    xs = np.linspace(-2, 2, 2000)
    assert np.all(kesten_density(q, xs) >= 0)
    assert integrate(q, lambda x: np.ones_like(x)) == pytest.approx(1, abs=1e-10)
    assert quad_mu(q, lambda x: 1).real == pytest.approx(1, abs=1e-10)


def test_reference_densities():
    assert semicircle_density(0.0) == pytest.approx(1 / math.pi)
    xs = np.linspace(-2.2, 2.2, 441)
    for p in (2, 3, 5):
        assert np.max(np.abs(serre_density(p, xs) - kesten_density(p, xs))) <= 1e-14
        assert reference_density(0.3, "serre", p) == pytest.approx(kesten_density(p, 0.3), abs=1e-15)
    assert np.max(np.abs(kesten_density(10 ** 6, xs) - semicircle_density(xs))) < 1e-5
    with pytest.raises(ValueError):
        reference_density(0.0, "wigner")


def test_stieltjes_closed_vs_quad(q):
    assert stieltjes_closed(q, 3).real == pytest.approx(quad_mu(q, lambda x: 1 / (3 - x)).real, abs=1e-10)
    z = 0.3 + 0.7j
    assert abs(stieltjes_closed(q, z) - quad_mu(q, lambda x: 1 / (z - x))) < 1e-10


def test_stieltjes_cf_properties(q):
    assert abs(stieltjes_cf(q, 10j, 50) - stieltjes_closed(q, 10j)) < 1e-12
    z = 1e6j
    assert abs(z * stieltjes_cf(q, z, 10) - 1) < 1e-9
    w = 0.4 + 0.9j
    assert stieltjes_cf(q, w.conjugate()) == pytest.approx(stieltjes_cf(q, w).conjugate(), abs=1e-15)
    with pytest.raises(ValueError):
        stieltjes_cf(q, 1.0)


def test_stieltjes_cf_random_points(q):
    rng = random.Random(7)
    for _ in range(20):
        z = complex(rng.uniform(-3, 3), rng.uniform(0.15, 3))
        assert abs(stieltjes_cf(q, z, 200) - stieltjes_closed(q, z)) < 1e-12
        assert stieltjes_closed(q, z).imag < 0


def test_stieltjes_cf_slow_corner():
    # next to 0.1i the periodic tail contracts by ~0.905 per level
    z = 0.1j
    err200 = abs(stieltjes_cf(2, z, 200) - stieltjes_closed(2, z))
    err400 = abs(stieltjes_cf(2, z, 400) - stieltjes_closed(2, z))
    assert 1e-10 < err200 < 1e-8
    assert err400 < 1e-15
    assert abs(stieltjes_cf(2, z, 5, tail="periodic") - stieltjes_closed(2, z)) < 1e-14


def test_closed_form_removable_point(q):
    # real z = +-(q^{1/2} + q^{-1/2}) zeroes both numerator and denominator
    z0 = math.sqrt(q) + 1 / math.sqrt(q)
    for z in (z0, -z0):
        assert stieltjes_closed(q, z).real == pytest.approx(quad_mu(q, lambda x: 1 / (z - x)).real, abs=1e-10)
    with pytest.raises(ValueError):
        stieltjes_closed(q, 0.5)


def test_inversion():
    assert stieltjes_inversion(2, 0.0) == pytest.approx(2 / (3 * math.pi), abs=1e-6)
    # square-root edge: small compared with the bulk, and matching the density
    assert stieltjes_inversion(2, 1.999) == pytest.approx(kesten_density(2, 1.999), abs=1e-6)
    assert stieltjes_inversion(2, 1.999) < 0.3 * kesten_density(2, 0.0)
    for q in (2, 3, 5):
        grid = [k / 10 for k in range(-19, 20)]
        err = max(abs(stieltjes_inversion(q, x) - kesten_density(q, x)) for x in grid)
        assert err < 1e-5


def test_integrate_examples():
    assert integrate(2, lambda x: x) == pytest.approx(0, abs=1e-12)
    assert integrate(2, lambda x: x ** 2) == pytest.approx(1.5, abs=1e-9)
    assert moment_numeric(2, 4) == pytest.approx(3.75, abs=1e-9)
    assert moment_numeric(3, 2) == pytest.approx(4 / 3, abs=1e-9)
    assert moment_numeric(5, 7) == pytest.approx(0, abs=1e-10)


def test_moments_vs_scipy(q):
    for m in (2, 6, 10):
        assert moment_numeric(q, m) == pytest.approx(quad_mu(q, lambda x: x ** m).real, rel=1e-9)


def test_chebyshev():
    assert chebyshev_u(1).coeffs == (0, 2)
    assert chebyshev_u(2).coeffs == (-1, 0, 4)
    rng = np.random.default_rng(3)
    th = rng.uniform(0.01, math.pi - 0.01, 100)
    for n in range(11):
        assert np.max(np.abs(chebyshev_u(n)(np.cos(th)) * np.sin(th) - np.sin((n + 1) * th))) < 1e-12


def test_orthopoly_examples():
    assert orthopoly(2, 0).coeffs == (1,)
    assert orthopoly(2, 1).coeffs == (0, 1)
    assert orthopoly(2, 2).coeffs == (Fraction(-3, 2), 0, 1)
    for q in (2, 3, 5, 7):
        for n in range(16):
            assert orthopoly(q, n) == orthopoly_via_chebyshev(q, n)


def test_orthogonality(q):
    for m in range(11):
        for n in range(m, 11):
            val = integrate(q, lambda x: orthopoly(q, m)(x) * orthopoly(q, n)(x))
            target = float(orthopoly_norm_sq(q, n)) if m == n else 0.0
            assert abs(val - target) < 1e-8
    assert orthopoly_norm_sq(q, 5) == Fraction(q + 1, q)


def test_polynomial_arith():
    p = Polynomial((Fraction(1), Fraction(2)))
    assert (p * p).coeffs == (1, 4, 4)
    assert (p - p).coeffs == ()
    assert p(Fraction(1, 2)) == 2
    assert p.rescale_arg(Fraction(1, 2)).coeffs == (1, 1)


def test_measure_object(q):
    mu = SpectralMeasure(q)
    assert mu.mass() == pytest.approx(1, abs=1e-10)
    assert mu.moment(2) == pytest.approx(float(moment_path_sum(q, 2)), rel=1e-12)
    x, w = mu.quadrature()
    assert np.all(w > 0) and np.all(np.abs(x) < 2)
