"""Capped absolute-precision p-adic numbers.

A :class:`PadicNumber` stores ``p**v * unit + O(p**prec)`` where ``unit`` is an
integer prime to ``p`` known modulo ``p**(prec - v)``.  The tracked zero is
represented with ``unit == 0`` and ``v == prec``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


class PadicError(ArithmeticError):
    """Domain error in p-adic arithmetic (division by zero, non-unit, ...)."""


class NotSplitError(PadicError):
    pass


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise PadicError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _split(n: int, p: int) -> tuple[int, int]:
    v = valuation(n, p)
    return v, n // p**v


class PadicNumber:
    __slots__ = ("p", "prec", "v", "unit")

    def __init__(self, p: int, prec: int, v: int, unit: int):
        self.p = p
        self.prec = prec
        if unit == 0 or v >= prec:
            self.v = prec
            self.unit = 0
            return
        if unit % p == 0:
            s, unit = _split(unit, p)
            v += s
            if v >= prec:
                self.v = prec
                self.unit = 0
                return
        self.v = v
        self.unit = unit % p ** (prec - v)

    # -- construction -------------------------------------------------
    @classmethod
    def from_rational(cls, p: int, x: Rational, prec: int) -> "PadicNumber":
        x = Fraction(x)
        if x == 0:
            return cls(p, prec, prec, 0)
        vn, num = _split(x.numerator, p)
        vd, den = _split(x.denominator, p)
        v = vn - vd
        if v >= prec:
            return cls(p, prec, prec, 0)
        mod = p ** (prec - v)
        return cls(p, prec, v, num * pow(den, -1, mod) % mod)

    @classmethod
    def zero(cls, p: int, prec: int) -> "PadicNumber":
        return cls(p, prec, prec, 0)

    def _coerce(self, other) -> "PadicNumber":
        if isinstance(other, PadicNumber):
            if other.p != self.p:
                raise PadicError("mixed primes %d and %d" % (self.p, other.p))
            return other
        if isinstance(other, (int, Fraction)):
            # exact rationals carry no precision cap of their own
            x = Fraction(other)
            v = 0 if x == 0 else valuation(x.numerator, self.p) - valuation(x.denominator, self.p)
            return PadicNumber.from_rational(self.p, x, max(self.prec, v + self.relprec + 1))
        return NotImplemented

    # -- basic queries --------------------------------------------------
    @property
    def relprec(self) -> int:
        return self.prec - self.v

    def is_zero(self) -> bool:
        return self.unit == 0

    def valuation(self) -> int:
        return self.v

    def is_unit(self) -> bool:
        return not self.is_zero() and self.v == 0

    def lift(self) -> Fraction:
        """Rational representative ``p**v * unit`` (an integer when ``v >= 0``)."""
        if self.is_zero():
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.v

    def lift_int(self) -> int:
        if self.v < 0 and not self.is_zero():
            raise PadicError("not integral")
        return int(self.lift())

    def digits(self) -> list[int]:
        """Base-p digits of the unit part, least significant first."""
        out = []
        n = self.unit
        for _ in range(self.relprec if not self.is_zero() else 0):
            n, r = divmod(n, self.p)
            out.append(r)
        return out

    def add_bigoh(self, prec: int) -> "PadicNumber":
        return PadicNumber(self.p, min(prec, self.prec), self.v, self.unit)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = min(self.prec, other.prec)
        if self.is_zero():
            return other.add_bigoh(prec)
        if other.is_zero():
            return self.add_bigoh(prec)
        base = min(self.v, other.v)
        n = self.unit * self.p ** (self.v - base) + other.unit * self.p ** (other.v - base)
        return PadicNumber(self.p, prec, base, n)

    __radd__ = __add__

    def __neg__(self):
        return PadicNumber(self.p, self.prec, self.v, -self.unit)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = min(self.prec + other.v, other.prec + self.v)
        if self.is_zero() or other.is_zero():
            return PadicNumber.zero(self.p, prec)
        return PadicNumber(self.p, prec, self.v + other.v, self.unit * other.unit)

    __rmul__ = __mul__

    def inverse(self) -> "PadicNumber":
        if self.is_zero():
            raise PadicError("division by p-adic zero O(%d^%d)" % (self.p, self.prec))
        r = self.relprec
        return PadicNumber(self.p, r - self.v, -self.v, pow(self.unit, -1, self.p**r))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return PadicNumber(self.p, max(self.prec, self.relprec, 1), 0, 1)
        if self.is_zero():
            return PadicNumber.zero(self.p, self.prec + (n - 1) * self.v)
        r = self.relprec
        return PadicNumber(self.p, n * self.v + r, n * self.v, pow(self.unit, n, self.p**r))

    def __eq__(self, other):
        if isinstance(other, (PadicNumber, int, Fraction)):
            d = self - other
            return d.is_zero()
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.prec, self.v, self.unit))

    def agrees_with(self, other, prec: int) -> bool:
        """True when ``self - other`` vanishes modulo ``p**prec``."""
        d = self - other
        if d.is_zero():
            return d.prec >= prec
        return d.v >= prec

    # -- rendering ----------------------------------------------------------
    def __str__(self):
        p = self.p
        terms = []
        for i, d in enumerate(self.digits()):
            if d == 0:
                continue
            e = self.v + i
            if e == 0:
                terms.append(str(d))
            elif e == 1:
                terms.append(f"{d}*{p}" if d != 1 else f"{p}")
            else:
                terms.append(f"{d}*{p}^{e}" if d != 1 else f"{p}^{e}")
        terms.append(f"O({p}^{self.prec})")
        return " + ".join(terms)

    def __repr__(self):
        return f"PadicNumber({self})"

    def to_json(self) -> dict:
        return {"p": self.p, "M": self.prec, "v": self.v, "digits": self.digits()}

    @classmethod
    def from_json(cls, d: dict) -> "PadicNumber":
        p = d["p"]
        unit = sum(x * p**i for i, x in enumerate(d["digits"]))
        return cls(p, d["M"], d["v"], unit)


# -- transcendental operations ---------------------------------------------

def teichmuller(x: PadicNumber) -> PadicNumber:
    """The (p-1)-st root of unity congruent to the unit ``x`` mod p."""
    if not x.is_unit():
        raise PadicError("Teichmuller lift needs a unit, got valuation %s" % x.v)
    p, r = x.p, x.relprec
    mod = p**r
    w = x.unit % mod
    for _ in range(r):
        w = pow(w, p, mod)
    return PadicNumber(p, r, 0, w)


def _log_one_unit(z: int, p: int, r: int) -> int:
    """log(1 + z) mod p**r for an integer z divisible by p."""
    n_max = 1
    while n_max - _floor_log(n_max + 1, p) < r:
        n_max += 1
    extra = _floor_log(n_max, p)
    mod = p ** (r + extra)
    out_mod = p**r
    total = 0
    zn = 1
    for n in range(1, n_max + 1):
        zn = zn * z % mod
        e, m = (0, n) if n % p else _split(n, p)
        term = (zn // p**e) * pow(m, -1, out_mod)
        total += term if n % 2 else -term
    return total % out_mod


def _floor_log(n: int, p: int) -> int:
    e = 0
    while p ** (e + 1) <= n:
        e += 1
    return e


def iwasawa_log(x: PadicNumber) -> PadicNumber:
    """Iwasawa's branch of log_p: log_p(p) = 0, roots of unity map to 0."""
    if x.is_zero():
        raise PadicError("log of a number indistinguishable from 0: O(%d^%d)" % (x.p, x.prec))
    p, r = x.p, x.relprec
    mod = p**r
    # u^(p-1) is a 1-unit whose log is (p-1) log u
    y = pow(x.unit, p - 1, mod)
    val = _log_one_unit(y - 1, p, r) * pow(p - 1, -1, mod) % mod
    return PadicNumber(p, r, 0, val)


def padic_exp(x: PadicNumber) -> PadicNumber:
    """exp on pZ_p (p odd); precision of the output equals that of the input."""
    if x.is_zero():
        return PadicNumber(x.p, x.prec, 0, 1)
    p = x.p
    if x.v < 1:
        raise PadicError("exp diverges at valuation %d" % x.v)
    m = x.prec
    mod = p**m
    # v(x^n/n!) >= n*v - (n-1)/(p-1) exceeds m beyond this bound
    n_max = -(-m * (p - 1) // ((p - 1) * x.v - 1)) + 2
    total = 1
    num = 1
    fact_unit = 1
    fact_v = 0
    for n in range(1, n_max + 1):
        num = num * x.unit % mod
        e, k = (0, n) if n % p else _split(n, p)
        fact_v += e
        fact_unit = fact_unit * k % mod
        tv = n * x.v - fact_v
        if tv < m:
            total += p**tv * num * pow(fact_unit, -1, mod)
    return PadicNumber(p, m, 0, total % mod)


def one_unit_part(x: PadicNumber) -> PadicNumber:
    """<x> = x / (p^v * teichmuller), a 1-unit."""
    u = PadicNumber(x.p, x.relprec, 0, x.unit)
    return u / teichmuller(u)


def hensel_sqrt(a: PadicNumber) -> PadicNumber:
    """Square root of a unit square, the root reducing to the smaller residue mod p."""
    if not a.is_unit():
        raise PadicError("hensel_sqrt needs a unit")
    p, r = a.p, a.relprec
    res = a.unit % p
    roots = [s for s in range(1, p) if s * s % p == res]
    if not roots:
        raise NotSplitError("%d is not a square mod %d: p does not split" % (res, p))
    x = roots[0]
    k = 1
    while k < r:
        k = min(2 * k, r)
        mod = p**k
        x = (x - (x * x - a.unit) * pow(2 * x, -1, mod)) % mod
    return PadicNumber(p, r, 0, x)


@dataclass(frozen=True)
class PadicContext:
    """Shared prime and working precision for one computation."""

    p: int
    M: int
    teichmuller_roots: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.p < 5:
            raise ValueError("p must be a prime >= 5")
        if any(self.p % d == 0 for d in range(2, int(self.p**0.5) + 1)):
            raise ValueError("%d is not prime" % self.p)
        if self.M < 1:
            raise ValueError("precision must be positive")
        roots = tuple(teichmuller(PadicNumber(self.p, self.M, 0, a)) for a in range(1, self.p))
        object.__setattr__(self, "teichmuller_roots", roots)

    def __call__(self, x: Rational) -> PadicNumber:
        return PadicNumber.from_rational(self.p, x, self.M)

    def zero(self) -> PadicNumber:
        return PadicNumber.zero(self.p, self.M)

    def one(self) -> PadicNumber:
        return self(1)

    def teichmuller(self, a: int) -> PadicNumber:
        return self.teichmuller_roots[a % self.p - 1]
