import itertools
from fractions import Fraction

import numpy as np
import pytest

from sphecke.exactnum import QExt
from sphecke.fock import (JacobiCoefficients, TruncationError, build_operators, hankel_minors,
                          moment_matrix_power, moment_path_sum, quantum_decomposition_check)
from sphecke.spectral import moment_numeric


def brute_moment(q, m):
    """Enumerate every +-1 walk; independent of the DP."""
    w = JacobiCoefficients(q)
    total = Fraction(0)
    for steps in itertools.product((1, -1), repeat=m):
        level, weight = 0, Fraction(1)
        for s in steps:
            if s == -1:
                if level == 0:
                    break
                weight *= w.omega(level)
            level += s
        else:
            if level == 0:
                total += weight
    return total


def test_jacobi():
    j = JacobiCoefficients(3)
    assert j.omega(1) == Fraction(4, 3)
    assert j.omegas(4) == [Fraction(4, 3), 1, 1, 1]
    assert j.alpha(0) == 0 and j.alpha(7) == 0


def test_operator_entries():
    bp, bm, b0 = build_operators(2, 6)
    assert bp[1, 0] == QExt(2, 0, 0, 0, Fraction(1, 2))
    assert bp[1, 0].to_float() == pytest.approx(np.sqrt(1.5))
    assert bm.apply(0) == {}
    assert bp[3, 2] == 1
    assert all(b0[i, j] == 0 for i in range(7) for j in range(7))
    for i in range(7):
        for j in range(7):
            assert bp[i, j] == bm[j, i]
    with pytest.raises(ValueError):
        build_operators(2, 1)


@pytest.mark.parametrize("q,N", [(2, 10), (3, 10), (5, 25), (4, 8)])
def test_quantum_decomposition(q, N):
    assert quantum_decomposition_check(q, N)


def test_path_sum_examples():
    assert moment_path_sum(2, 0) == 1
    assert moment_path_sum(2, 1) == 0
    assert moment_path_sum(2, 2) == Fraction(3, 2)
    assert moment_path_sum(2, 4) == Fraction(15, 4)
    with pytest.raises(ValueError):
        moment_path_sum(2, 31)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_path_sum_vs_enumeration(q):
    for m in range(0, 15):
        assert moment_path_sum(q, m) == brute_moment(q, m)


def test_matrix_power_examples():
    assert moment_matrix_power(2, 2, 10) == pytest.approx(1.5, abs=1e-12)
    assert moment_matrix_power(2, 4, 10) == pytest.approx(3.75, abs=1e-12)
    assert moment_matrix_power(3, 7, 10) == 0
    with pytest.raises(TruncationError):
        moment_matrix_power(2, 8, 4)


def test_moment_agreement(q):
    for m in range(0, 21, 2):
        exact = float(moment_path_sum(q, m))
        assert moment_matrix_power(q, m, 15) == pytest.approx(exact, rel=1e-10)
        assert moment_numeric(q, m) == pytest.approx(exact, rel=1e-9)


def test_hankel_positive(q):
    moments = [moment_path_sum(q, m) for m in range(13)]
    for k in range(7):
        assert all(d > 0 for d in hankel_minors(moments, k))
