"""Truncated q-expansions and the operators V, U_p, p-depletion and d^t.

Coefficients live either in Q (exact ``Fraction`` mode, the reference) or in
Z/p^M (``modulus`` set, the fast path).  Index 0 is the constant term.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .ellcurve import EllipticCurveData, an_list
from .padic import PadicError, PadicNumber, iwasawa_log, padic_exp, teichmuller

DEFAULT_QPREC = 200

Weight = Union[int, PadicNumber]


class QExpansion:
    __slots__ = ("coeffs", "weight", "level", "p", "modulus", "prec")

    def __init__(self, coeffs, weight: Weight, level: int, p: int, modulus: int | None = None, prec: int | None = None):
        if modulus is None:
            self.coeffs = tuple(Fraction(c) for c in coeffs)
        else:
            self.coeffs = tuple(_reduce(c, modulus) for c in coeffs)
        self.weight = weight
        self.level = level
        self.p = p
        self.modulus = modulus
        self.prec = prec

    @property
    def qprec(self) -> int:
        """Largest exponent n whose coefficient is known."""
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def _like(self, coeffs, weight=None) -> "QExpansion":
        return QExpansion(coeffs, self.weight if weight is None else weight, self.level, self.p, self.modulus, self.prec)

    def is_exact(self) -> bool:
        return self.modulus is None

    def reduce_mod(self, M: int) -> "QExpansion":
        """Image in Z/p^M; coefficients must be p-integral."""
        return QExpansion(self.coeffs, self.weight, self.level, self.p, self.p**M, M)

    def truncate(self, n: int) -> "QExpansion":
        return self._like(self.coeffs[: n + 1])

    def is_depleted(self) -> bool:
        return all(self.coeffs[n] == 0 for n in range(self.p, self.qprec + 1, self.p))

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        n = min(self.qprec, other.qprec)
        return self.modulus == other.modulus and self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __add__(self, other: "QExpansion") -> "QExpansion":
        n = min(self.qprec, other.qprec)
        return self._like([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)])

    def __sub__(self, other: "QExpansion") -> "QExpansion":
        n = min(self.qprec, other.qprec)
        return self._like([self.coeffs[i] - other.coeffs[i] for i in range(n + 1)])

    def scale(self, c) -> "QExpansion":
        return self._like([c * a for a in self.coeffs])

    def __mul__(self, other: "QExpansion") -> "QExpansion":
        n = min(self.qprec, other.qprec)
        out = [0] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return self._like(out)

    def to_json(self) -> dict:
        def enc(c):
            if isinstance(c, Fraction):
                return str(c) if c.denominator != 1 else c.numerator
            return c
        w = self.weight if isinstance(self.weight, int) else str(self.weight)
        return {"weight": w, "level": self.level, "p": self.p, "M_q": self.qprec,
                "modulus": self.modulus, "coeffs": [enc(c) for c in self.coeffs]}

    def __repr__(self):
        shown = " + ".join(f"{c}*q^{n}" for n, c in enumerate(self.coeffs[:8]) if c)
        return f"QExpansion(k={self.weight}, N={self.level}, p={self.p}: {shown} + O(q^{self.qprec + 1}))"


def _reduce(c, modulus: int) -> int:
    c = Fraction(c) if not isinstance(c, int) else c
    if isinstance(c, int):
        return c % modulus
    return c.numerator * pow(c.denominator, -1, modulus) % modulus


@dataclass(frozen=True)
class NewformData:
    level: int
    ap_sign: int
    curve_label: str
    weight: int = 2

    def __post_init__(self):
        if self.weight != 2:
            raise ValueError("only weight 2 newforms attached to curves are modelled")
        if self.ap_sign not in (1, -1):
            raise ValueError("a_p must be +1 or -1 at a multiplicative prime, got %r" % self.ap_sign)

    @property
    def split_multiplicative(self) -> bool:
        return self.ap_sign == 1


def an_from_curve(curve: EllipticCurveData, bound: int = DEFAULT_QPREC) -> QExpansion:
    """q-expansion of the weight 2 newform attached to ``curve`` up to q^bound."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    p = curve.p if curve.p is not None else 0
    return QExpansion(an_list(curve, bound), 2, curve.tame_level, p)


def newform_data(curve: EllipticCurveData) -> NewformData:
    if curve.p is None or curve.conductor % curve.p:
        raise ValueError("curve %s has no marked multiplicative prime" % curve.label)
    return NewformData(curve.conductor, curve.ap(curve.p), curve.label)


def V(f: QExpansion) -> QExpansion:
    """q -> q^p."""
    p = f.p
    out = [0] * (p * f.qprec + 1)
    for n, c in enumerate(f.coeffs):
        out[p * n] = c
    return f._like(out)


def U_p(f: QExpansion) -> QExpansion:
    p = f.p
    return f._like([f.coeffs[p * n] for n in range(f.qprec // p + 1)])


def deplete(f: QExpansion, a_p) -> QExpansion:
    """f - a_p V(f), truncated to f's range."""
    vf = V(f)
    return f._like([f.coeffs[n] - a_p * vf.coeffs[n] for n in range(f.qprec + 1)])


def _power_coeff(n: int, t, branch: int, p: int, M: int) -> int:
    # n^t = omega(n)^branch * <n>^t, p does not divide n
    x = PadicNumber(p, M, 0, n)
    w = teichmuller(x)
    u = x / w
    if isinstance(t, int):
        tp = PadicNumber.from_rational(p, t, M)
    else:
        tp = t
    e = padic_exp(tp * iwasawa_log(u))
    return ((w ** (branch % (p - 1))) * e).add_bigoh(M).lift_int()


def atkin_serre_power(f: QExpansion, t, branch: int | None = None, M: int | None = None) -> QExpansion:
    """d^t f: the coefficient a_n becomes n^t a_n.

    Integer t >= 0 is exact in either mode.  Negative integer t needs a
    p-depleted input.  A p-adic t (a PadicNumber in Z_p) needs a depleted input
    and a residue ``branch`` mod p-1 choosing the Teichmuller character; the
    result lives in Z/p^M.
    """
    p = f.p
    if isinstance(t, int) and t >= 0:
        return f._like([n**t * c for n, c in enumerate(f.coeffs)], weight=_shift_weight(f.weight, t))
    if not f.is_depleted():
        raise PadicError("d^t with t negative or p-adic needs a p-depleted form")
    if isinstance(t, int) and f.is_exact():
        out = [Fraction(0) if n == 0 else Fraction(c) / Fraction(n) ** (-t) for n, c in enumerate(f.coeffs)]
        return f._like(out, weight=_shift_weight(f.weight, t))
    if isinstance(t, int):
        mod = f.modulus
        out = [0 if n == 0 or c == 0 else c * pow(n, t, mod) % mod for n, c in enumerate(f.coeffs)]
        return f._like(out, weight=_shift_weight(f.weight, t))
    if not isinstance(t, PadicNumber) or t.v < 0:
        raise PadicError("p-adic exponent must be a PadicNumber in Z_p")
    if branch is None:
        raise PadicError("a p-adic exponent needs a branch residue mod p-1")
    M = M or t.prec
    mod = p**M
    g = f if not f.is_exact() else f.reduce_mod(M)
    out = [0] * (g.qprec + 1)
    for n, c in enumerate(g.coeffs):
        if n and c:
            out[n] = c * _power_coeff(n, t, branch, p, M) % mod
    res = QExpansion(out, _shift_weight(f.weight, t), f.level, p, mod, min(M, g.prec or M))
    return res


def _shift_weight(k, t):
    return k + 2 * t


def atkin_serre(f: QExpansion) -> QExpansion:
    return atkin_serre_power(f, 1)


def coleman_value_series(f: QExpansion, a_p=None) -> QExpansion:
    """d^{-1} of the p-depletion: sum over p-prime n of (a_n / n) q^n."""
    if a_p is None:
        a_p = f.coeffs[f.p]
    return atkin_serre_power(deplete(f, a_p), -1)
