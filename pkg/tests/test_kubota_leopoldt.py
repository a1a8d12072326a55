from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from exczero.kubota_leopoldt import (
    FG_CONSTANT, DirichletCharacterData, bernoulli_numbers, fg_crosscheck, fg_ratio, kl_series,
    mahler_valuation_defect, node_value,
)
from exczero.linvariants import l_invariant_chi
from exczero.padic import PadicError, PadicNumber
from exczero.quadfield import ImagQuadField, split_prime


def bernoulli_poly(n, x):
    # B_n(x) = sum_k C(n,k) B_k x^(n-k), with B_k from the recursion sum_{k<m+1} C(m+1,k) B_k = 0
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return sum(comb(n, k) * B[k] * x ** (n - k) for k in range(n + 1))


def test_bernoulli_frozen():
    B = bernoulli_numbers(12)
    assert B[1] == Fraction(-1, 2) and B[2] == Fraction(1, 6) and B[12] == Fraction(-691, 2730)


@pytest.mark.parametrize("disc", [-3, -4, -7, -11, -23, -40])
@pytest.mark.parametrize("n", [1, 2, 3, 5, 9])
def test_generalized_bernoulli_against_polynomials(disc, n):
    chi = DirichletCharacterData(disc)
    D = chi.modulus
    direct = Fraction(D) ** (n - 1) * sum(chi(a) * bernoulli_poly(n, Fraction(a, D)) for a in range(1, D + 1))
    assert chi.generalized_bernoulli(n) == direct


def test_classical_value_is_class_number():
    for disc, h in [(-11, 1), (-23, 3), (-47, 5), (-31, 3)]:
        assert DirichletCharacterData(disc).classical_l_at_zero() == h


@pytest.mark.parametrize("disc,p", [(-11, 5), (-23, 13), (-11, 7), (-19, 5)])
def test_series_interpolates_beyond_fitted_nodes(disc, p):
    ser = kl_series(DirichletCharacterData(disc), p, 12)
    assert all(ok for _, ok in ser.nodes_check(4))
    assert mahler_valuation_defect(ser) <= 0


@pytest.mark.parametrize("disc,p", [(-11, 5), (-19, 7)])
def test_derivative_against_difference_quotient(disc, p):
    ser = kl_series(DirichletCharacterData(disc), p, 20)
    d = ser.derivative_at_j0()
    for k in (4, 6):
        x = p**k
        q = (ser.value_at_j(x) - ser.value_at_j(0)) / x
        assert q.agrees_with(d, k - 1)


def test_trivial_zero_and_inert_control():
    split = kl_series(DirichletCharacterData(-11), 5, 20)
    assert split.value_at_j(0).is_zero()
    inert = kl_series(DirichletCharacterData(-23), 5, 20)
    assert not inert.value_at_j(0).is_zero()
    assert node_value(DirichletCharacterData(-23), 5, 1) == 2 * DirichletCharacterData(-23).classical_l_at_zero()


def test_fg_ratio_rejects_inert():
    with pytest.raises(PadicError):
        fg_ratio(ImagQuadField(-23), 5, 10)


def test_too_few_nodes():
    with pytest.raises(PadicError):
        kl_series(DirichletCharacterData(-11), 5, 20, nodes=3)


@pytest.mark.parametrize("disc,p", [(-11, 5), (-19, 7), (-8, 11)])
def test_fg_crosscheck_with_frozen_constant(disc, p):
    K = ImagQuadField(disc)
    rep = fg_crosscheck(K, p, l_invariant_chi(split_prime(K, p, 24)).add_bigoh(20), 20)
    assert rep.constant == FG_CONSTANT == -1
    assert rep.agree


def test_fg_crosscheck_wrong_constant_fails():
    K = ImagQuadField(-11)
    L = l_invariant_chi(split_prime(K, 5, 24)).add_bigoh(20)
    assert not fg_crosscheck(K, 5, L, 20, constant=Fraction(1)).agree


@given(st.integers(0, 40), st.sampled_from([(-11, 5), (-19, 7), (-23, 7)]))
def test_kummer_congruence(j, pair):
    # L_p at integers congruent mod (p-1) p^k agree mod p^(k+1)
    disc, p = pair
    ser = kl_series(DirichletCharacterData(disc), p, 8)
    a, b = ser.value_at_j(j), ser.value_at_j(j + p**2)
    assert a.agrees_with(b, 3)
