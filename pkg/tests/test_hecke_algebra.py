import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sphecke.exactnum import ContextError, QExt
from sphecke.hecke_algebra import (BasisTag, HeckeElement, RadialFunction, cell_volume,
                                   change_basis, convolve, element, hecke_T, inner_product,
                                   normalized_e, parse_element, phi, psi, radial_action_matrix,
                                   radial_apply, star, t_power_in_tprime, t_prime, to_radial, unit)
from sphecke import coset_oracle


@st.composite
def elements(draw, q=None, max_support=8):
    q = draw(st.sampled_from([2, 3, 5])) if q is None else q
    basis = draw(st.sampled_from(list(BasisTag)))
    idx = draw(st.lists(st.integers(0, 10), min_size=0, max_size=max_support, unique=True))
    coeffs = {}
    for n in idx:
        a = draw(st.fractions(-20, 20, max_denominator=6))
        b = draw(st.fractions(-5, 5, max_denominator=4))
        coeffs[n] = QExt(q, a, b)
    return element(q, basis, coeffs)


def test_unit():
    q = 2
    assert convolve(unit(q), hecke_T(q, 1)) == hecke_T(q, 1)
    assert change_basis(unit(q), BasisTag.Psi).coeffs == {0: 1}
    assert inner_product(unit(q), unit(q)) == 1
    with pytest.raises(ValueError):
        unit(1)


def test_change_basis_examples(q):
    assert change_basis(psi(q, 2), BasisTag.T).coeffs == {2: 1, 0: -1}
    assert change_basis(phi(q, 2), BasisTag.PolyInTPrime).coeffs == {2: 1, 0: -Fraction(q + 1, q)}
    # T(p^n) = q^{n/2} U_n(T'/2)
    for n in range(6):
        assert t_power_in_tprime(q, n) == hecke_T(q, n)


def test_phi2_poly_matches_chebyshev_expansion(q):
    # U_2(x/2) - q^{-1} U_0(x/2) = x^2 - 1 - 1/q
    expected = element(q, BasisTag.PolyInTPrime, {2: 1, 0: -1 - Fraction(1, q)})
    assert phi(q, 2) == expected
    assert change_basis(expected, BasisTag.Phi).coeffs == {2: 1}


@given(elements())
def test_round_trips(f):
    for tag in BasisTag:
        assert change_basis(change_basis(f, tag), f.basis).coeffs == f.coeffs
    assert change_basis(change_basis(f, BasisTag.Psi), BasisTag.T) == f


def test_convolve_examples(q):
    T1 = hecke_T(q, 1)
    assert convolve(T1, T1).coeffs == {2: 1, 0: q}
    f = element(q, BasisTag.Phi, {0: 3, 4: QExt(q, 0, 1)})
    assert convolve(unit(q), f) == f
    assert change_basis(convolve(t_prime(q), phi(q, 1)), BasisTag.Phi).coeffs == {2: 1, 0: Fraction(q + 1, q)}


def test_recurrence_closure(q):
    T1 = hecke_T(q, 1)
    for n in range(1, 21):
        assert convolve(T1, hecke_T(q, n)).coeffs == {n + 1: 1, n - 1: q}


def test_phi_relations(q):
    tp = t_prime(q)
    for n in range(2, 21):
        assert change_basis(convolve(tp, phi(q, n)), BasisTag.Phi).coeffs == {n + 1: 1, n - 1: 1}
    assert change_basis(convolve(tp, phi(q, 0)), BasisTag.Phi).coeffs == {1: 1}


def test_context_errors():
    with pytest.raises(ContextError):
        convolve(unit(2), unit(3))
    with pytest.raises(ContextError):
        inner_product(unit(2), unit(3))


@given(st.data())
def test_commutative_associative(data):
    q = data.draw(st.sampled_from([2, 3]))
    f, g, h = (data.draw(elements(q, max_support=4)) for _ in range(3))
    assert convolve(f, g) == convolve(g, f)
    assert convolve(convolve(f, g), h) == convolve(f, convolve(g, h))


@given(st.data())
def test_star(data):
    q = data.draw(st.sampled_from([2, 3]))
    f, g = data.draw(elements(q, 4)), data.draw(elements(q, 4))
    assert star(star(f)) == f
    assert star(convolve(f, g)) == convolve(star(g), star(f))
    assert star(hecke_T(q, 1)) == hecke_T(q, 1)


@given(st.data())
def test_self_adjoint(data):
    q = data.draw(st.sampled_from([2, 3, 5]))
    f, g = data.draw(elements(q, 5)), data.draw(elements(q, 5))
    tp = t_prime(q)
    assert inner_product(convolve(tp, f), g) == inner_product(f, convolve(tp, g))


def test_cell_volume_matches_enumeration():
    assert cell_volume(2, 0) == 1
    assert cell_volume(2, 1) == 3
    assert cell_volume(2, 3) == 12
    for q in (2, 3):
        for n in range(5):
            assert cell_volume(q, n) == len(coset_oracle.enumerate_cell_cosets(q, n))


def test_inner_products(q):
    assert inner_product(psi(q, 1), psi(q, 2)) == 0
    for n in range(1, 8):
        assert inner_product(phi(q, n), phi(q, n)) == Fraction(q + 1, q)
        assert inner_product(normalized_e(q, n), normalized_e(q, n)) == 1
    for m in range(6):
        for n in range(m):
            assert inner_product(phi(q, m), phi(q, n)) == 0


def test_radial_action_matrix_entries():
    m = radial_action_matrix(2, 6)
    assert m[0][1] == QExt(2, 0, 0, 0, Fraction(1, 2))
    assert m[0][1].to_float() == pytest.approx(math.sqrt(1.5))
    assert m[2][3] == 1 and m[3][2] == 1
    assert all(m[i][i] == 0 for i in range(7))
    # last column loses its e_{n_max+1} component
    assert m[5][6] == 1 and sum(1 for i in range(7) if not m[i][6].is_zero()) == 1
    with pytest.raises(ValueError):
        radial_action_matrix(2, 1)


def test_radial_action_matrix_symmetric(q):
    m = radial_action_matrix(q, 10)
    for i in range(11):
        for j in range(11):
            assert m[i][j] == m[j][i]


def test_radial_apply_indicator(q):
    f = RadialFunction(q, [1.0, 0, 0, 0, 0])
    out = radial_apply(f).values
    assert out == pytest.approx([0, q ** -0.5, 0, 0])
    # R(T')ch_K = T', whose cell values come from convolve
    ref = to_radial(convolve(t_prime(q), unit(q)), 3).values
    assert out == pytest.approx(ref)


def test_radial_apply_constant(q):
    out = radial_apply(RadialFunction(q, np.ones(6))).values
    assert out[0] == pytest.approx((q + 1) / math.sqrt(q))
    assert out[1:] == pytest.approx(math.sqrt(q) + 1 / math.sqrt(q))
    with pytest.raises(ValueError):
        radial_apply(RadialFunction(q, [1.0]))


def test_radial_apply_matches_convolution(q):
    # (R(g) f) = f o g for bi-invariant f, g: compare cell values
    rng = random.Random(q)
    for _ in range(5):
        f = element(q, BasisTag.Psi, {n: rng.randint(-5, 5) for n in range(6)})
        lhs = radial_apply(to_radial(f, 8)).values
        rhs = to_radial(convolve(f, t_prime(q)), 7).values
        assert lhs == pytest.approx(rhs, abs=1e-12)


def test_text_round_trip(q):
    f = element(q, BasisTag.NormalizedE, {0: QExt(q, Fraction(1, 2), 0, -3, 1), 3: 7})
    assert parse_element(q, f.to_text()) == f
    g = parse_element(q, "T:{1:(1,0,0,0), 0:-1/2}")
    assert g.coeffs == {0: Fraction(-1, 2), 1: 1}
    for bad in ("X:{1:1}", "T:1:1", "T:{a:1}"):
        with pytest.raises(ValueError):
            parse_element(q, bad)
