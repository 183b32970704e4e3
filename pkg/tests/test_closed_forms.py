from fractions import Fraction
from math import gcd

import pytest

from orbitmoments.closed_forms import (
    cm_moment,
    dk,
    gl2_densities,
    gl2_moment,
    inert_partial_moment,
    mk,
    mk_divisor_sum,
    mk_euler_product,
    noncm_moment,
    p_poly,
    split_densities,
)
from orbitmoments.core_arith import divisor_count, sieve_primes
from orbitmoments.residue_algebra import CLASS_NUMBER_ONE_D, QuadOrderSpec


def test_p_poly_values():
    assert p_poly(2, 1, 2) == 3
    assert p_poly(4, 2, 3) == (4**3 - 2**3) // (4 - 2) == 28
    assert p_poly(5, 3, 0) == 0
    assert p_poly(5, 3, 1) == 1


def test_p_poly_symmetry():
    for a in range(-6, 7):
        for b in range(-6, 7):
            if a == b:
                continue
            for k in range(6):
                assert p_poly(a, b, k) == p_poly(b, a, k)


def test_p_poly_rejects_equal_args():
    with pytest.raises(ValueError):
        p_poly(3, 3, 2)


def test_mk_basic_values():
    for n in range(1, 101):
        assert mk(n, 0) == 1
    for n in range(1, 501):
        assert mk(n, 1) == divisor_count(n)
    assert mk(12, 1) == 6
    assert mk(4, 2) == 10  # hand expansion: 1 - 1 + 4 - 2 + 8
    assert mk(6, 2) == mk(2, 2) * mk(3, 2) == 4 * 5


def test_mk_dual_evaluation_agrees():
    for n in range(1, 301):
        for k in range(9):
            assert mk_divisor_sum(n, k) == mk_euler_product(n, k)


def test_mk_integer_valued():
    for n in range(1, 200):
        for k in range(6):
            assert mk(n, k).denominator == 1
            assert mk(n, k) >= 1


def test_mk_multiplicative():
    for n1 in range(1, 101):
        for n2 in range(1, 101):
            if n1 * n2 <= 100 and gcd(n1, n2) == 1:
                for k in (1, 2, 3):
                    assert mk(n1 * n2, k) == mk(n1, k) * mk(n2, k)


def test_dk_gaussian_primes():
    gauss = QuadOrderSpec(-1)
    assert dk(5, gauss) == 4  # splits
    assert dk(7, gauss) == 2  # inert
    assert dk(2, gauss) == 3  # ramifies


def test_dk_prime_powers_and_multiplicativity():
    gauss = QuadOrderSpec(-1)
    assert dk(25, gauss) == 9  # split: (a+1)^2
    assert dk(49, gauss) == 3  # inert: a+1
    assert dk(8, gauss) == 7  # ramified: 2a+1
    for d in CLASS_NUMBER_ONE_D:
        spec = QuadOrderSpec(d)
        for n1 in range(1, 30):
            for n2 in range(1, 30):
                if gcd(n1, n2) == 1:
                    assert dk(n1 * n2, spec) == dk(n1, spec) * dk(n2, spec)


def test_gl2_moment_values():
    for ell in (2, 3, 5, 7, 11, 13, 17):
        assert gl2_moment(ell, 0) == 1
    assert gl2_moment(3, 1) == 2 == divisor_count(3)
    assert gl2_moment(3, 2) == 6  # the ell-factor ell + 3 at ell = 3
    assert gl2_moment(5, 2) == 8


def test_gl2_moment_rejects_composite():
    with pytest.raises(ValueError):
        gl2_moment(6, 1)


def test_noncm_matches_gl2_at_primes():
    for ell in (2, 3, 5, 7, 11, 13):
        for k in range(1, 7):
            assert noncm_moment(ell, k) == gl2_moment(ell, k)


def test_noncm_values():
    assert noncm_moment(3, 1) == 2
    assert noncm_moment(15, 2) == 6 * 8  # product of (ell + 3) over 3, 5
    assert noncm_moment(1, 3) == 1


def test_noncm_rejects_square_factor():
    with pytest.raises(ValueError):
        noncm_moment(12, 1)


def test_cm_moment_values():
    for ell in (3, 5, 7, 11, 13):
        for d in (2, 3, 4):
            assert cm_moment(ell, 0, d) == 1
            assert cm_moment(ell, 1, d) == Fraction(d + 2, 2)
    assert cm_moment(5, 2, 4) == 23


def test_cm_moment_rejects():
    with pytest.raises(ValueError):
        cm_moment(2, 1, 4)
    with pytest.raises(ValueError):
        cm_moment(5, 1, 5)


def test_inert_partial_moment():
    assert inert_partial_moment(5, 0) == Fraction(1, 2)
    assert inert_partial_moment(5, 1) == 1
    assert inert_partial_moment(5, 3) == 16
    for ell in (3, 5, 7, 11):
        for k in range(7):
            assert inert_partial_moment(ell, k) == mk(ell, k) / 2


def test_split_densities():
    for ell in sieve_primes(50):
        if ell == 2:
            continue
        for d in (2, 3, 4):
            assert sum(split_densities(ell, d)) == Fraction(1, 2)
    assert split_densities(5, 4)[1] == Fraction(1, 4)
    assert split_densities(7, 2)[1] == 0


def test_gl2_densities():
    for ell in sieve_primes(50):
        d0, d1, d2 = gl2_densities(ell)
        assert d0 + d1 + d2 == 1
        assert d0 > 0 and d1 > 0 and d2 > 0
    assert gl2_densities(3)[2] == Fraction(1, 48)
    assert gl2_densities(3)[1] * 48 == 20


def test_cm_zeroth_moments_are_one():
    # zeroth moments are total densities
    for ell in (3, 5, 7):
        for d in (2, 3, 4):
            d0, d1, d2 = split_densities(ell, d)
            assert d0 + d1 + d2 + inert_partial_moment(ell, 0) == 1
