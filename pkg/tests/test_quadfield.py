from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from exczero.linvariants import l_invariant_chi
from exczero.padic import NotSplitError, PadicNumber, iwasawa_log
from exczero.quadfield import (
    Ideal, ImagQuadField, QuadElt, class_group, heegner_hypothesis, is_fundamental, kronecker_symbol,
    phi_o, reduced_forms, split_prime,
)


def jacobi(a, n):
    a %= n
    out = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                out = -out
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            out = -out
        a %= n
    return out if n == 1 else 0


def kron(d, m):
    # (d | m) for m > 0 via the factor 2 and Jacobi on the odd part
    out = 1
    while m % 2 == 0:
        m //= 2
        out *= 0 if d % 2 == 0 else (1 if d % 8 in (1, 7) else -1)
    return out * jacobi(d, m) if m > 1 else out


def analytic_class_number(disc):
    D = -disc
    w = {3: 6, 4: 4}.get(D, 2)
    B1 = Fraction(sum(kron(disc, a) * a for a in range(1, D + 1)), D)
    return -Fraction(w, 2) * B1


def brute_force_count(disc):
    n = 0
    a = 1
    while 3 * a * a <= -disc:
        for b in range(-a + 1, a + 1):
            if (b * b - disc) % (4 * a):
                continue
            c = (b * b - disc) // (4 * a)
            if c < a or (c == a and b < 0) or gcd(gcd(a, b), c) != 1:
                continue
            n += 1
        a += 1
    return n


FUND = [d for d in range(-3, -200, -1) if is_fundamental(d)]


def test_fundamental_list():
    assert FUND[:8] == [-3, -4, -7, -8, -11, -15, -19, -20]
    assert not is_fundamental(-12) and not is_fundamental(-16)


@pytest.mark.parametrize("disc", FUND)
def test_class_number_three_ways(disc):
    h = len(reduced_forms(disc))
    assert h == brute_force_count(disc) == analytic_class_number(disc)


def test_known_class_numbers():
    assert {d: len(reduced_forms(d)) for d in (-23, -47, -71, -191, -199)} == {-23: 3, -47: 5, -71: 7, -191: 13, -199: 9}


@pytest.mark.parametrize("disc", [d for d in FUND if d < -4])
def test_group_axioms_exhaustive(disc):
    G = class_group(disc)
    e = ImagQuadField(disc).identity()
    S = set(G)
    for f in G:
        assert f * e == f and e * f == f
        assert f * f.inverse() == e
        for g in G:
            fg = f * g
            assert fg in S and fg == g * f
            for k in G:
                assert (fg * k) == f * (g * k)


def test_kronecker_symbol_multiplicative():
    for d in (-11, -23, -40):
        for m in range(1, 60):
            for n in range(1, 30):
                assert kronecker_symbol(d, m * n) == kronecker_symbol(d, m) * kronecker_symbol(d, n)
            assert kronecker_symbol(d, m) == kron(d, m)


@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30))
def test_quad_arith(a, b, c, d):
    x, y = QuadElt(a, b, -23), QuadElt(c, d, -23)
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x * y).conj() == x.conj() * y.conj()
    if y != QuadElt(0, 0, -23):
        assert (x / y) * y == x


def test_split_prime_5_11():
    sp = split_prime(ImagQuadField(-11), 5, 20)
    assert sp.pi.norm() == 5
    assert sp.varpi.valuation() == 1
    assert sp.varpi_bar.valuation() == -1
    assert sp.swap_root().varpi.agrees_with(sp.varpi_bar, 15)


@pytest.mark.parametrize("disc,p", [(-11, 5), (-23, 13), (-31, 7), (-47, 7), (-71, 5)])
def test_varpi_generates_p_to_h(disc, p):
    K = ImagQuadField(disc)
    sp = split_prime(K, p, 20)
    assert sp.pi.norm() == p ** K.h
    assert sp.varpi.valuation() == K.h
    L = l_invariant_chi(sp)
    assert L.agrees_with(iwasawa_log(sp.varpi) / K.h, L.prec)


def test_inert_prime_rejected():
    with pytest.raises(NotSplitError):
        split_prime(ImagQuadField(-11), 7, 10)


def test_phi_on_principal_ideal():
    K = ImagQuadField(-23)
    sp = split_prime(K, 13, 15)
    beta = QuadElt(Fraction(3, 2), Fraction(1, 2), -23)
    I = Ideal.from_generators(-23, [beta])
    val = phi_o(sp, I)
    expect = (sp.embed(beta) / sp.embed(beta.conj())) ** K.h
    assert val.agrees_with(expect, 12)


def test_heegner_hypothesis():
    ok, wit = heegner_hypothesis(ImagQuadField(-11), 15)
    assert ok and set(wit) == {3, 5}
    assert heegner_hypothesis(ImagQuadField(-23), 15)[0] is False
