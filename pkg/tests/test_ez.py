from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from exczero.ez import (
    DEGENERATE_MARKER, EZInput, assemble_Lp, exceptional_factor, ez_verify, improved_factor, improved_factor_at,
)
from exczero.padic import PadicNumber, iwasawa_log

P, M = 5, 20


def padic(x, prec=M):
    return PadicNumber.from_rational(P, x, prec)


def make_input(Lf=10, varpi=Fraction(6, 11) * 5, lam=3, w=-1, log_loc=None, order=3, core=()):
    vp = padic(varpi, M + 1)
    return EZInput(P, M, padic(Lf), iwasawa_log(vp), w, padic(lam), vp, 1,
                   None if log_loc is None else padic(log_loc), order, core)


def test_exceptional_factors_vanish_exactly():
    inp = make_input()
    assert exceptional_factor(inp, "p").value_at_origin().is_zero()
    assert exceptional_factor(inp, "pbar").value_at_origin().is_zero()
    with pytest.raises(ValueError):
        exceptional_factor(inp, "q")


def test_exceptional_factor_first_derivatives():
    inp = make_input()
    E = exceptional_factor(inp, "p")
    assert E.d_kappa().agrees_with((inp.ell - inp.L_f) * Fraction(1, 2), M - 2)
    assert E.d_tau().agrees_with(-inp.ell, M - 2)


def test_conjugate_factor_symmetry():
    # Ebar(kappa, kappa - tau) = E(kappa, tau) as jets
    inp = make_input(order=4)
    E = exceptional_factor(inp, "p")
    Eb = exceptional_factor(inp, "pbar").linear_change(1, 0, 1, -1)
    assert E.agrees_with(Eb, M - 4)


def test_improved_factor_value():
    inp = make_input()
    assert improved_factor(inp).value_at_origin().agrees_with(padic(Fraction(4, 5)), M - 2)
    assert improved_factor_at(inp, padic(0)).agrees_with(padic(Fraction(4, 5)), M - 2)


@given(st.integers(1, 10**6), st.integers(1, 10**6), st.sampled_from([-1, 1]))
def test_weight_derivative_closed_form(Lf, lam, w):
    inp = make_input(Lf=Lf * P, lam=lam, w=w)
    A = assemble_Lp(inp)
    expect = (inp.L_f - inp.ell) * inp.lam * Fraction(-(1 - w), 2)
    assert A.L_p.d_kappa().agrees_with(expect, M - 3)


def test_line_restriction_first_coefficient():
    inp = make_input()
    A = assemble_Lp(inp)
    assert A.line.coeff(1, 0).agrees_with(-(inp.L_f * inp.lam), M - 3)


def test_line_vanishes_when_lf_is_zero():
    inp = make_input(Lf=0)
    assert not assemble_Lp(inp).line_residual_terms(M - 4)


def test_core_constant_term_is_fixed():
    inp = make_input(core=(((0, 0), padic(1)),))
    with pytest.raises(ValueError):
        ez_verify(inp)


def test_higher_core_terms_do_not_move_first_derivatives():
    base = ez_verify(make_input(log_loc=Fraction(15, 4)))
    bumped = ez_verify(make_input(log_loc=Fraction(15, 4), core=(((1, 0), padic(7)), ((0, 1), padic(2)))))
    for tag in ("derivative-in-weight", "derivative-bracket", "derivative-formula"):
        assert base.check(tag).passed == bumped.check(tag).passed


def test_degenerate_report():
    rep = ez_verify(make_input(w=1, log_loc=Fraction(15, 4)))
    assert rep.degenerate
    c = rep.check("degenerate-zero-equals-zero")
    assert c.passed and c.name == DEGENERATE_MARKER


def test_twist_direction_value_closed_form():
    lam = Fraction(3)
    log_loc = lam / Fraction(4, 5)
    inp = make_input(lam=lam, log_loc=log_loc)
    rep = ez_verify(inp)
    direct = rep.values["log Z'_0 (twist direction)"]
    assert direct.agrees_with(-(inp.L_chi * padic(log_loc)), M - 4)


def test_input_validation():
    with pytest.raises(ValueError):
        make_input(w=0)
    with pytest.raises(ValueError):
        make_input(order=1)
