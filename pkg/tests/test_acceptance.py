"""One test per acceptance criterion, each at its stated tolerance and time budget."""

import random
import time
from fractions import Fraction

import pytest

from exczero import qseries
from exczero.catalog import RunConfig, load_catalog
from exczero.heegner import point_formal_log
from exczero.iwasawa import IwasawaElement, TowerClass, divide_derivative
from exczero.kubota_leopoldt import FG_CONSTANT, DirichletCharacterData, fg_crosscheck, kl_series
from exczero.linvariants import j_of_q, l_invariant_chi, tate_period
from exczero.padic import PadicNumber, padic_exp, valuation
from exczero.pipeline import run
from exczero.quadfield import ImagQuadField, class_group, is_fundamental, reduced_forms, split_prime

from .test_quadfield import analytic_class_number, brute_force_count

SPLIT_PAIRS = [(5, -11), (5, -19), (7, -19), (13, -23), (7, -31), (11, -7)]
INERT_PAIRS = [(5, -23), (7, -11)]


# -- 1. operator algebra ------------------------------------------------------------------

def test_criterion_1_operator_algebra(criterion, catalog):
    t0 = time.perf_counter()
    bad = []
    for label in ("15a1", "35a1"):
        E = catalog.curve(label)
        p = E.p
        f = qseries.an_from_curve(E, 200)
        if qseries.U_p(qseries.V(f)) != f:
            bad.append("U_p V != id at p=%d" % p)
        dep = qseries.deplete(f, f[p])
        if any(qseries.U_p(dep).coeffs):
            bad.append("U_p f^[p] != 0 at p=%d" % p)
        if qseries.atkin_serre_power(qseries.atkin_serre_power(dep, 1), -1) != dep:
            bad.append("d^-1 d != id at p=%d" % p)
        for m in (0, 1, 2):
            g = dep.reduce_mod(m + 1)
            for t in (0, 1, 3, p):
                t2 = t + p**m * (p - 1)
                if qseries.atkin_serre_power(g, t) != qseries.atkin_serre_power(g, t2):
                    bad.append("d^t congruence p=%d m=%d t=%d" % (p, m, t))
    dt = time.perf_counter() - t0
    criterion(not bad and dt < 5, "p in {5,7}, M_q = 200, %.2fs %s" % (dt, "; ".join(bad)))


# -- 2. class groups --------------------------------------------------------------------

def test_criterion_2_class_groups(criterion):
    t0 = time.perf_counter()
    bad = []
    discs = [d for d in range(-3, -200, -1) if is_fundamental(d)]
    for d in discs:
        h = len(reduced_forms(d))
        if not h == brute_force_count(d) == analytic_class_number(d):
            bad.append(d)
        if d < -4:
            G = class_group(d)
            e = ImagQuadField(d).identity()
            S = set(G)
            for f in G:
                if f * e != f or f * f.inverse() != e:
                    bad.append(d)
                for g in G:
                    if f * g not in S or f * g != g * f:
                        bad.append(d)
                    for k in G:
                        if (f * g) * k != f * (g * k):
                            bad.append(d)
    dt = time.perf_counter() - t0
    criterion(not bad and dt < 10, "%d discriminants, %.2fs, failures %s" % (len(discs), dt, sorted(set(bad))))


# -- 3. Tate period -----------------------------------------------------------------------

def test_criterion_3_tate_period(criterion, catalog):
    bad, seen = [], 0
    for label, E in sorted(catalog.curves.items()):
        p = E.p
        a, b = tate_period(E.j, p, 30), tate_period(E.j, p, 35)
        ord_j = valuation(E.j.numerator, p) - valuation(E.j.denominator, p)
        good = 30 - a.delta
        ok = (a.ord == -ord_j
              and j_of_q(a.q).agrees_with(PadicNumber.from_rational(p, E.j, good), good)
              and a.q.agrees_with(b.q, good))
        seen += 1
        if not ok:
            bad.append(label)
    criterion(seen >= 3 and not bad, "%d curves at M = 30 vs 35, failures %s" % (seen, bad))


# -- 4. trivial zero ---------------------------------------------------------------------

def test_criterion_4_trivial_zero(criterion):
    t0 = time.perf_counter()
    M, delta = 20, 2
    bad = []
    for p, d in SPLIT_PAIRS:
        v = kl_series(DirichletCharacterData(d), p, M).value_at_j(0)
        small = v.prec >= M - delta if v.is_zero() else v.v >= M - delta
        if not small:
            bad.append((p, d))
    inert_ok = []
    for p, d in INERT_PAIRS:
        inert_ok.append(not kl_series(DirichletCharacterData(d), p, M).value_at_j(0).is_zero())
    dt = time.perf_counter() - t0
    criterion(not bad and all(inert_ok) and (5, -11) in SPLIT_PAIRS and dt < 30,
              "%d split pairs vanish to p^%d, %d inert controls nonzero, %.2fs" % (len(SPLIT_PAIRS), M - delta,
                                                                                   sum(inert_ok), dt))


# -- 5. Ferrero-Greenberg cross-check -------------------------------------------------------

def test_criterion_5_fg_crosscheck(criterion):
    M, delta = 20, 2
    bad = []
    for p, d in SPLIT_PAIRS:
        K = ImagQuadField(d)
        L = l_invariant_chi(split_prime(K, p, M + 4)).add_bigoh(M)
        rep = fg_crosscheck(K, p, L, M, FG_CONSTANT)
        if not (rep.agree and rep.precision >= M - delta):
            bad.append((p, d))
    criterion(not bad, "constant %s on %d pairs, failures %s" % (FG_CONSTANT, len(SPLIT_PAIRS), bad))


# -- 6. exceptional-zero harness ---------------------------------------------------------------

@pytest.fixture(scope="module")
def ez_run():
    t0 = time.perf_counter()
    res = run(RunConfig(5, -11, "15a1", M=20), load_catalog())
    return res, time.perf_counter() - t0


def _check(criterion, ez_run, tag):
    c = ez_run[0].ez.check(tag)
    criterion(c.passed, "%s [agreement to p^%s]" % (c.name, c.precision))


def test_criterion_6a_exceptional_factor_vanishing(criterion, ez_run):
    _check(criterion, ez_run, "exceptional-factor-vanishing")


def test_criterion_6b_line_vanishing(criterion, ez_run):
    _check(criterion, ez_run, "line-vanishing")


def test_criterion_6c_chain_rule(criterion, ez_run):
    _check(criterion, ez_run, "chain-rule-on-line")


def test_criterion_6d_bracket(criterion, ez_run):
    _check(criterion, ez_run, "derivative-bracket")


def test_criterion_6e_solved_derivative(criterion, ez_run):
    _check(criterion, ez_run, "derivative-formula")


def test_criterion_6f_degenerate_report(criterion):
    rep = run(RunConfig(5, -11, "15a1", M=20, w=1), load_catalog()).ez
    criterion(rep.degenerate and rep.all_passed, "w = +1 emits the 0 = 0 report")


def test_criterion_6g_runtime(criterion, ez_run):
    criterion(ez_run[1] < 10, "end-to-end 15a1, p = 5, Q(sqrt(-11)), M = 20 in %.2fs" % ez_run[1])


# -- 7. derivative lemma on tower classes ---------------------------------------------------------

def test_criterion_7_tower_derivative(criterion):
    t0 = time.perf_counter()
    rng = random.Random(20261016)
    bad = 0
    for _ in range(100):
        p = rng.choice([5, 7, 11])
        M, n = rng.randint(6, 12), rng.randint(3, 7)
        rank = rng.randint(1, 3)
        Y = [IwasawaElement(p, M, n, [rng.randrange(p**M) for _ in range(n)]) for _ in range(rank)]
        Z = TowerClass(tuple(IwasawaElement.T(p, M, n) * y for y in Y))
        q = TowerClass(tuple(c.divide_by_T() for c in Z.components))
        if q != TowerClass(tuple(IwasawaElement(p, M, n - 1, y.coeffs) for y in Y)):
            bad += 1
        eta = padic_exp(PadicNumber.from_rational(p, p * rng.randint(1, 10**6), M))
        a = rng.choice([x for x in range(2, 40) if x % p])
        d1 = divide_derivative(Z, eta)
        d2 = divide_derivative(Z.in_generator(a), eta**a)
        if not all(u.agrees_with(v, M) for u, v in zip(d1.value, d2.value)):
            bad += 1
    dt = time.perf_counter() - t0
    criterion(bad == 0 and dt < 5, "100 random classes, %d failures, %.2fs" % (bad, dt))


# -- 8. Heegner formal logarithm ------------------------------------------------------------------

def test_criterion_8_heegner_formal_log(criterion, catalog):
    M, delta = 20, 2
    bad = []
    n = 0
    for E, p, P in catalog.triples():
        n += 1
        sp = split_prime(ImagQuadField(P.disc), p, M + 10)
        if not E.on_curve(P.point):
            bad.append((E.label, "on-curve"))
        r = point_formal_log(E, P.point, sp, M)
        r2 = point_formal_log(E, P.point, sp, M, m=2 * r.m)
        if not r.value.agrees_with(r2.value, M - delta):
            bad.append((E.label, "m"))
        Pbar = (P.point[0].conj(), P.point[1].conj())
        lhs = point_formal_log(E, E.add(P.point, Pbar), sp, M).value
        rhs = r.value + point_formal_log(E, Pbar, sp, M).value
        if not lhs.agrees_with(rhs, M - delta):
            bad.append((E.label, "P + Pbar"))
        l3 = point_formal_log(E, E.mul(3, P.point), sp, M).value
        if not l3.agrees_with(r.value * 3, M - delta):
            bad.append((E.label, "3P"))
    criterion(n >= 1 and not bad and not catalog.rejects, "%d bundled points, failures %s" % (n, bad))
