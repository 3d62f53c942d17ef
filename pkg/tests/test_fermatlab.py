from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ohtsuki.errors import NotInvertibleError
from ohtsuki.fermatlab import (
    ModQElement,
    check_gauss,
    check_probes,
    check_srfi,
    gauss_expand,
    gauss_sum,
    legendre,
    modq,
    odd_primes,
    q_pow,
    quantum_int,
    rational_mod,
    residue_probe,
    srfi_valid_order,
)
from ohtsuki.residues import gprime

R = 13
elems = st.lists(st.integers(0, R - 1), min_size=R - 1, max_size=R - 1).map(lambda c: ModQElement(R, c))


def test_primes_and_rationals():
    assert odd_primes(3, 20) == [3, 5, 7, 11, 13, 17, 19]
    assert rational_mod(Fraction(1, 2), 11) == 6
    assert legendre(2, 7) == 1 and legendre(3, 7) == -1


def test_q_is_one_plus_x():
    q = q_pow(R, 1)
    assert q - 1 == ModQElement.x_power(R, 1)
    assert q_pow(R, R) == ModQElement.const(R, 1)
    half = q_pow(R, Fraction(1, 2))
    assert half * half == q


def test_quantum_integer():
    assert quantum_int(R, 1) == ModQElement.const(R, 1)
    assert modq(R, "q^(1/2) + q^(-1/2)") == quantum_int(R, 2)


@given(elems, elems, elems)
@settings(max_examples=40, deadline=None)
def test_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a


@given(elems)
@settings(max_examples=40, deadline=None)
def test_inverse(a):
    if a.coeffs()[0] == 0:
        with pytest.raises(NotInvertibleError):
            a.inverse()
    else:
        assert a * a.inverse() == ModQElement.const(R, 1)


def test_gauss_sum_square():
    # G_0^2 = (-1/r) r, and r = 0 in F_r: the sum is divisible by x^((r-1)/2)
    G = gauss_sum(R, 0)
    assert G.valuation() >= (R - 1) // 2


def test_gauss_expand_matches_gprime():
    for r in (11, 13, 17):
        assert gauss_expand(r, 1, 2) == [rational_mod(gprime(1, m), r) for m in range(3)]


def test_srfi_window():
    assert srfi_valid_order(101, 3) >= 3
    assert srfi_valid_order(11, 3) >= 1


def test_suites_pass_on_small_primes():
    primes = [11, 13, 17, 19, 23]
    assert all(r["ok"] for r in check_gauss(primes, 2, 3))
    assert all(r["ok"] for r in check_srfi(primes, 2, 3))
    assert all(r["ok"] for r in check_probes(primes))


def test_probe_detects_non_fermat():
    p = residue_probe(lambda r: r // 2, [11, 13, 17, 19], Fraction(-1, 2))
    assert p.stable
    p = residue_probe(lambda r: 1 if r % 4 == 1 else 2, [11, 13, 17, 19], Fraction(1))
    assert not p.stable
