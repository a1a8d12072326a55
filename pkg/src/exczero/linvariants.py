"""L-invariants: the Tate-period invariant of E, the split-prime invariant of chi_K, and their difference."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .ellcurve import EllipticCurveData
from .padic import PadicError, PadicNumber, iwasawa_log, valuation
from .quadfield import SplitPrimeData

_JQ_CACHE: dict[int, list[int]] = {}


def _sigma3(n: int) -> int:
    return sum(d**3 for d in range(1, n + 1) if n % d == 0)


def jq_coefficients(n: int) -> list[int]:
    """Integer coefficients of q*j(q) = E4^3 / (Delta/q) up to q^n."""
    if n in _JQ_CACHE:
        return _JQ_CACHE[n]
    e4 = [1] + [240 * _sigma3(k) for k in range(1, n + 1)]
    # Delta/q = prod (1 - q^m)^24
    eta = [1] + [0] * n
    for m in range(1, n + 1):
        for _ in range(24):
            for k in range(n, m - 1, -1):
                eta[k] -= eta[k - m]
    e4_3 = _mul(_mul(e4, e4, n), e4, n)
    inv = [0] * (n + 1)
    inv[0] = 1
    for k in range(1, n + 1):
        inv[k] = -sum(eta[i] * inv[k - i] for i in range(1, k + 1))
    out = _mul(e4_3, inv, n)
    _JQ_CACHE[n] = out
    return out


def _mul(a, b, n):
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j in range(n + 1 - i):
                out[i + j] += x * b[j]
    return out


def j_of_q(q: PadicNumber) -> PadicNumber:
    """j(q) = 1/q + 744 + 196884 q + ... for ord_p(q) >= 1, with tracked precision."""
    if q.is_zero() or q.v < 1:
        raise PadicError("j(q) needs 0 < |q|_p < 1")
    n = -(-q.prec // q.v) + 1
    c = jq_coefficients(n)
    acc = PadicNumber.zero(q.p, q.prec)
    for k in range(n, -1, -1):
        acc = acc * q + c[k]
    return acc / q


@dataclass(frozen=True)
class TatePeriod:
    q: PadicNumber
    j: Fraction
    delta: int
    newton_steps: int

    @property
    def ord(self) -> int:
        return self.q.valuation()

    def to_json(self) -> dict:
        return {"q_E": self.q.to_json(), "j": str(self.j), "ord": self.ord, "delta": self.delta,
                "newton_steps": self.newton_steps}


def tate_period(j_E, p: int, M: int) -> TatePeriod:
    """q_E with j(q_E) = j_E, by Newton iteration on A*q - B*(q j(q)) with j_E = A/B."""
    j_E = Fraction(j_E)
    if j_E == 0 or valuation(j_E.denominator, p) == 0 or j_E.numerator % p == 0:
        raise PadicError("ord_p(j) >= 0: no Tate parametrization at %d" % p)
    A, B = j_E.numerator, j_E.denominator
    n = valuation(B, p)
    mod = p**M
    terms = -(-M // n) + 1
    c = [x % mod for x in jq_coefficients(terms)]

    def G(x):
        acc = 0
        for k in range(terms, -1, -1):
            acc = (acc * x + c[k]) % mod
        return (A * x - B * acc) % mod

    def dG(x):
        acc = 0
        for k in range(terms, 0, -1):
            acc = (acc * x + k * c[k]) % mod
        return (A - B * acc) % mod

    # dG is a unit, so Newton doubles the number of correct digits
    x, steps = 0, 0
    while True:
        step = G(x) * pow(dG(x), -1, mod) % mod
        if step == 0:
            break
        x = (x - step) % mod
        steps += 1
        if steps > 4 * M:
            raise PadicError("Newton iteration for q_E did not converge")
    q = PadicNumber(p, M, 0, x)
    if q.valuation() != n:
        raise AssertionError("ord_p(q_E) = %d but -ord_p(j) = %d" % (q.valuation(), n))
    residual = j_of_q(q) - j_E
    known = residual.prec if residual.is_zero() else residual.v
    return TatePeriod(q, j_E, M - known, steps)


def l_invariant_f(tp: TatePeriod) -> PadicNumber:
    """log_p(q_E) / ord_p(q_E)."""
    return iwasawa_log(tp.q) / tp.ord


def curve_l_invariant(E: EllipticCurveData, p: int, M: int) -> PadicNumber:
    if E.reduction_type(p) != "split":
        raise PadicError("%s is not split multiplicative at %d" % (E.label, p))
    return l_invariant_f(tate_period(E.j, p, M))


def l_invariant_chi(sp: SplitPrimeData) -> PadicNumber:
    """log_p(varpi)/ord_p(varpi), cross-checked against -2 log_p(pibar)/h."""
    a = iwasawa_log(sp.varpi) / sp.varpi.valuation()
    b = l_invariant_chi_via_pibar(sp)
    prec = min(a.prec, b.prec)
    if not a.agrees_with(b, prec):
        raise AssertionError("the two formulas for the chi_K invariant disagree: %s vs %s" % (a, b))
    return a


def l_invariant_chi_bar(sp: SplitPrimeData) -> PadicNumber:
    """log_p(pibar/pi)/h under the same embedding: the invariant of the conjugate prime."""
    return iwasawa_log(sp.varpi_bar) / sp.h


def l_invariant_chi_via_pibar(sp: SplitPrimeData) -> PadicNumber:
    return iwasawa_log(sp.embed(sp.pibar)) * Fraction(-2, sp.h)


@dataclass
class LInvariantReport:
    L_f: PadicNumber
    L_chi: PadicNumber
    L_fK: PadicNumber
    provenance: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"L_p(f)": self.L_f.to_json(), "L_p(chi_K)": self.L_chi.to_json(),
                "L_p(f,K)": self.L_fK.to_json(), "provenance": dict(self.provenance)}


def l_invariant_fK(L_f: PadicNumber, L_chi: PadicNumber, provenance: dict | None = None) -> LInvariantReport:
    if L_f.p != L_chi.p:
        raise PadicError("L-invariants at different primes")
    return LInvariantReport(L_f, L_chi, L_f - L_chi, dict(provenance or {}))


def linvariant_report(E: EllipticCurveData, sp: SplitPrimeData, M: int) -> LInvariantReport:
    tp = tate_period(E.j, sp.p, M)
    if E.reduction_type(sp.p) != "split":
        raise PadicError("%s is not split multiplicative at %d" % (E.label, sp.p))
    prov = {
        "curve": E.label, "disc": sp.K.disc, "p": sp.p, "M": M,
        "tate_delta": tp.delta, "ord_q": tp.ord,
        "model": "global minimal model, Manin constant assumed 1",
    }
    return l_invariant_fK(l_invariant_f(tp), l_invariant_chi(sp), prov)
