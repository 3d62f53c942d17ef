from fractions import Fraction

import pytest

from ohtsuki import residues
from ohtsuki.residues import ResidueTables, F_coeffs, g_table, gprime, nu, nu_series, power_sum, res_D, sigma_lm


def test_res_D():
    assert res_D(0) == 1
    assert res_D(1) == Fraction(-1, 2)
    assert res_D(2) == Fraction(3, 4)
    assert res_D(-1) == 2
    assert res_D(-2) == Fraction(4, 3)


def test_power_sums():
    assert power_sum(1, 5) == 10
    assert power_sum(2, 4) == 14


def test_gprime_low():
    assert gprime(0, 0) == -1
    assert [g_table(0, m) for m in range(4)] == [1, 0, 0, 0]
    assert sigma_lm(0, 0, 1) == Fraction(1, 2)


@pytest.mark.parametrize("f", [1, -1])
def test_nu_rows(f):
    assert [nu(f, 0, m) for m in range(4)] == [-f, 0, 0, 0]
    assert [nu(f, 1, m) for m in range(4)] == [2, 1, 0, 0]
    assert nu(f, 2, 0) == -2 * f


@pytest.mark.parametrize("f", [1, -1])
def test_nu_cancellation_through_five(f):
    fresh = ResidueTables()
    for i in range(6):
        s = fresh.nu_series(f, i, 4)
        assert s.order == 4


def test_recompute_matches_memo():
    fresh = ResidueTables()
    for l in range(3):
        for m in range(4):
            assert fresh.gprime(l, m) == gprime(l, m)
            assert fresh.g(l, m) == g_table(l, m)
    assert fresh.nu_series(1, 3, 3) == nu_series(1, 3, 3)
    assert fresh.F(3, 2) == F_coeffs(3, 2)


def test_F_base():
    assert F_coeffs(0, 0) == (1,)
    assert residues.F_poly(1, 1).evaluate(2) == sum(Fraction(c) * 2**k for k, c in enumerate(F_coeffs(1, 1)))
