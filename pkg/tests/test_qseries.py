from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from exczero import qseries
from exczero.ellcurve import EllipticCurveData
from exczero.padic import PadicError, PadicNumber
from exczero.qseries import QExpansion, U_p, V, atkin_serre_power, coleman_value_series, deplete

E15 = EllipticCurveData("15a1", (1, 1, 1, -10, -10), 15, 5)
E35 = EllipticCurveData("35a1", (0, 1, 1, 9, 1), 35, 7)


@pytest.fixture(scope="module", params=[E15, E35], ids=["p5", "p7"])
def form(request):
    return qseries.an_from_curve(request.param, 200)


def test_up_v_identity(form):
    assert U_p(V(form)) == form


def test_up_kills_depletion(form):
    d = deplete(form, form[form.p])
    assert d.is_depleted()
    assert all(c == 0 for c in U_p(d).coeffs)


def test_dinverse_d_on_depleted(form):
    d = deplete(form, form[form.p])
    assert atkin_serre_power(atkin_serre_power(d, 1), -1) == d
    assert atkin_serre_power(atkin_serre_power(d, -3), 3) == d


def test_weights_shift():
    f = qseries.an_from_curve(E15, 30)
    assert atkin_serre_power(f, 2).weight == 6
    assert coleman_value_series(f).weight == 0


def test_negative_power_needs_depletion():
    with pytest.raises(PadicError):
        atkin_serre_power(qseries.an_from_curve(E15, 30), -1)


def test_coleman_series_values():
    f = qseries.an_from_curve(E15, 12)
    g = coleman_value_series(f)
    assert list(g.coeffs[:7]) == [0, 1, Fraction(-1, 2), Fraction(-1, 3), Fraction(-1, 4), 0, Fraction(1, 6)]


@given(st.integers(0, 3), st.integers(0, 200), st.integers(1, 3))
def test_dt_congruence(m, s, step):
    # t = t' mod p^m (p-1) forces agreement mod p^{m+1}
    p = 5
    f = deplete(qseries.an_from_curve(E15, 200), 1).reduce_mod(m + 1)
    t = s
    t2 = s + step * p**m * (p - 1)
    assert atkin_serre_power(f, t) == atkin_serre_power(f, t2)


def test_padic_exponent_matches_integer():
    p, M = 5, 10
    f = deplete(qseries.an_from_curve(E15, 60), 1)
    t = PadicNumber.from_rational(p, 7, M)
    a = atkin_serre_power(f, t, branch=7, M=M)
    b = atkin_serre_power(f.reduce_mod(M), 7)
    assert a == b


def test_padic_exponent_needs_branch():
    f = deplete(qseries.an_from_curve(E15, 30), 1)
    with pytest.raises(PadicError):
        atkin_serre_power(f, PadicNumber.from_rational(5, 3, 8))


@given(st.lists(st.integers(-50, 50), min_size=5, max_size=40), st.sampled_from([5, 7]))
def test_up_v_random(coeffs, p):
    f = QExpansion(coeffs, 2, 1, p)
    assert U_p(V(f)) == f


def test_json_shape():
    d = qseries.an_from_curve(E15, 10).to_json()
    assert set(d) == {"weight", "level", "p", "M_q", "modulus", "coeffs"}
