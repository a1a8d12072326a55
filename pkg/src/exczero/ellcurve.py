"""Weierstrass curves over Q: invariants, point counts, Hecke eigenvalues, group law."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .padic import valuation
from .quadfield import kronecker, prime_factors


@dataclass(frozen=True)
class EllipticCurveData:
    label: str
    ainvs: tuple
    conductor: int
    p: int | None = None

    def __post_init__(self):
        if len(self.ainvs) != 5 or any(Fraction(a).denominator != 1 for a in self.ainvs):
            raise ValueError("need five integral a-invariants, got %r" % (self.ainvs,))
        object.__setattr__(self, "ainvs", tuple(int(a) for a in self.ainvs))
        if self.discriminant == 0:
            raise ValueError("singular curve %s" % self.label)

    @property
    def b2(self):
        a1, a2, a3, a4, a6 = self.ainvs
        return a1 * a1 + 4 * a2

    @property
    def b4(self):
        a1, a2, a3, a4, a6 = self.ainvs
        return 2 * a4 + a1 * a3

    @property
    def b6(self):
        a1, a2, a3, a4, a6 = self.ainvs
        return a3 * a3 + 4 * a6

    @property
    def b8(self):
        a1, a2, a3, a4, a6 = self.ainvs
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @property
    def c4(self):
        return self.b2**2 - 24 * self.b4

    @property
    def c6(self):
        return -self.b2**3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def discriminant(self):
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def j(self) -> Fraction:
        return Fraction(self.c4**3, self.discriminant)

    @property
    def tame_level(self) -> int:
        if self.p is None:
            return self.conductor
        return self.conductor // self.p

    def bad_primes(self) -> list[int]:
        return prime_factors(self.discriminant)

    def reduction_type(self, ell: int) -> str:
        """'good', 'split', 'nonsplit' or 'additive' (the model is assumed minimal at ell)."""
        if self.discriminant % ell:
            return "good"
        if self.c4 % ell == 0:
            return "additive"
        return "split" if self.count_points(ell) == ell else "nonsplit"

    def count_points(self, ell: int) -> int:
        """Projective points of the reduction mod ell, singular point included."""
        a1, a2, a3, a4, a6 = (a % ell for a in self.ainvs)
        if ell == 2:
            n = 1
            for x in range(2):
                for y in range(2):
                    if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % 2 == 0:
                        n += 1
            return n
        # (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
        b2, b4, b6 = self.b2 % ell, self.b4 % ell, self.b6 % ell
        n = 1
        for x in range(ell):
            r = (4 * x**3 + b2 * x * x + 2 * b4 * x + b6) % ell
            n += 1 + kronecker(r, ell)
        return n

    def ap(self, ell: int) -> int:
        return ell + 1 - self.count_points(ell)

    def on_curve(self, P) -> bool:
        if P is None:
            return True
        x, y = P
        a1, a2, a3, a4, a6 = self.ainvs
        return y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6) == 0

    def residual(self, P):
        x, y = P
        a1, a2, a3, a4, a6 = self.ainvs
        return y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6)

    # -- group law, generic over any field type --------------------------------
    def neg(self, P):
        if P is None:
            return None
        a1, a2, a3, a4, a6 = self.ainvs
        x, y = P
        return (x, -y - a1 * x - a3)

    def add(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        a1, a2, a3, a4, a6 = self.ainvs
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if y1 + y2 + a1 * x2 + a3 == 0:
                return None
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
        else:
            lam = (y2 - y1) / (x2 - x1)
        nu = y1 - lam * x1
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - nu - a3
        return (x3, y3)

    def mul(self, n: int, P):
        if n < 0:
            return self.mul(-n, self.neg(P))
        out = None
        while n:
            if n & 1:
                out = self.add(out, P)
            P = self.add(P, P)
            n >>= 1
        return out

    def to_json(self) -> dict:
        return {"label": self.label, "a_invariants": list(self.ainvs), "conductor": self.conductor, "p": self.p}


def an_list(E: EllipticCurveData, bound: int) -> list[int]:
    """[a_0, a_1, ..., a_bound] of the attached newform (a_0 = 0)."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    a = [0] * (bound + 1)
    a[1] = 1
    primes = [q for q in range(2, bound + 1) if all(q % d for d in range(2, int(q**0.5) + 1))]
    for ell in primes:
        t = E.ap(ell)
        good = E.conductor % ell != 0
        powers = [1, t]
        q = ell
        while q * ell <= bound:
            if good:
                powers.append(t * powers[-1] - ell * powers[-2])
            else:
                powers.append(t * powers[-1])
            q *= ell
        pe = 1
        for e in range(1, len(powers)):
            pe *= ell
            a[pe] = powers[e]
    for n in range(2, bound + 1):
        if a[n] or _is_prime_power(n):
            continue
        # multiplicativity: split off one prime power
        ell = prime_factors(n)[0]
        e = valuation(n, ell)
        q = ell**e
        a[n] = a[q] * a[n // q]
    return a


def _is_prime_power(n: int) -> bool:
    return len(prime_factors(n)) == 1
