"""Imaginary quadratic fields: class groups, split primes, anticyclotomic characters."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt

from .padic import NotSplitError, PadicContext, PadicError, PadicNumber, hensel_sqrt, iwasawa_log
from .series2 import TwoVarSeries


def is_fundamental(disc: int) -> bool:
    """Fundamental discriminant test for disc < 0."""
    if disc >= 0:
        return False
    if disc % 4 == 1:
        return _squarefree(-disc)
    if disc % 4 == 0:
        m = disc // 4
        return m % 4 in (2, 3) and _squarefree(-m)
    return False


def _squarefree(n: int) -> bool:
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def kronecker(d: int, ell: int) -> int:
    """Kronecker symbol (d | ell) for a prime ell."""
    if ell == 2:
        if d % 2 == 0:
            return 0
        return 1 if d % 8 in (1, 7) else -1
    r = d % ell
    if r == 0:
        return 0
    return 1 if pow(r, (ell - 1) // 2, ell) == 1 else -1


def kronecker_symbol(d: int, n: int) -> int:
    """Completely multiplicative extension of (d | .) to all integers n."""
    if n == 0:
        return 1 if abs(d) == 1 else 0
    out = 1
    if n < 0:
        n = -n
        out = -1 if d < 0 else 1
    for ell in prime_factors(n):
        e = 0
        while n % ell == 0:
            n //= ell
            e += 1
        out *= kronecker(d, ell) ** e
    return out


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    n = abs(n)
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- elements ---------------------------------------------------------------

@dataclass(frozen=True)
class QuadElt:
    """a + b*sqrt(disc) with rational a, b."""

    a: Fraction
    b: Fraction
    disc: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def _c(self, o):
        if isinstance(o, QuadElt):
            return o
        return QuadElt(Fraction(o), Fraction(0), self.disc)

    def __add__(self, o):
        o = self._c(o)
        return QuadElt(self.a + o.a, self.b + o.b, self.disc)

    __radd__ = __add__

    def __neg__(self):
        return QuadElt(-self.a, -self.b, self.disc)

    def __sub__(self, o):
        return self + (-self._c(o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._c(o)
        return QuadElt(self.a * o.a + self.disc * self.b * o.b, self.a * o.b + self.b * o.a, self.disc)

    __rmul__ = __mul__

    def conj(self) -> "QuadElt":
        return QuadElt(self.a, -self.b, self.disc)

    def norm(self) -> Fraction:
        return self.a * self.a - self.disc * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def __truediv__(self, o):
        o = self._c(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in K")
        num = self * o.conj()
        return QuadElt(num.a / n, num.b / n, self.disc)

    def __rtruediv__(self, o):
        return self._c(o) / self

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            return self.b == 0 and self.a == o
        if isinstance(o, QuadElt):
            return self.a == o.a and self.b == o.b and self.disc == o.disc
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.disc))

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integral(self) -> bool:
        return self.trace().denominator == 1 and self.norm().denominator == 1

    def embed(self, root: PadicNumber) -> PadicNumber:
        """Image under sqrt(disc) -> root."""
        if self.b == 0:
            return PadicNumber.from_rational(root.p, self.a, root.prec)
        return root * self.b + self.a

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt({self.disc}))"


# -- binary quadratic forms --------------------------------------------------

@dataclass(frozen=True, order=True)
class BinaryQF:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return gcd(gcd(a, b), c) == 1

    def reduce(self) -> "BinaryQF":
        a, b, c = self.a, self.b, self.c
        while True:
            if b > a or b <= -a:
                # normalize b into (-a, a]
                r = (a - b) // (2 * a)
                b, c = b + 2 * r * a, a * r * r + b * r + c
            if a > c:
                a, b, c = c, -b, a
                continue
            if a == c and b < 0:
                b = -b
            return BinaryQF(a, b, c)

    def inverse(self) -> "BinaryQF":
        return BinaryQF(self.a, -self.b, self.c).reduce()

    def compose(self, other: "BinaryQF") -> "BinaryQF":
        """Gauss composition (Shanks' formulation) followed by reduction."""
        if other.disc != self.disc:
            raise ValueError("forms of different discriminant")
        f1, f2 = (self, other) if self.a <= other.a else (other, self)
        a1, b1, c1 = f1.a, f1.b, f1.c
        a2, b2, c2 = f2.a, f2.b, f2.c
        s = (b1 + b2) // 2
        n = b2 - s
        if a2 % a1 == 0:
            y1, d = 0, a1
        else:
            d, u, _ = _xgcd(a2, a1)
            y1 = u
        if s % d == 0:
            y2, x2, d1 = -1, 0, d
        else:
            d1, x2, y2 = _xgcd(s, d)
            y2 = -y2
        v1, v2 = a1 // d1, a2 // d1
        r = (y1 * y2 * n - x2 * c2) % v1
        b3 = b2 + 2 * v2 * r
        a3 = v1 * v2
        c3 = (c2 * d1 + r * (b2 + v2 * r)) // v1
        return BinaryQF(a3, b3, c3).reduce()

    def __mul__(self, other):
        return self.compose(other)

    def ideal(self, disc: int) -> "Ideal":
        """The ideal [a, (-b + sqrt(disc))/2] attached to the form."""
        return Ideal.from_generators(disc, [QuadElt(self.a, 0, disc), QuadElt(Fraction(-self.b, 2), Fraction(1, 2), disc)])


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def reduced_forms(disc: int) -> list[BinaryQF]:
    """All reduced primitive positive definite forms of discriminant disc."""
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError("bad discriminant %d" % disc)
    out = []
    a = 1
    while 3 * a * a <= -disc:
        for b in range(-a + 1, a + 1):
            if (b * b - disc) % (4 * a):
                continue
            c = (b * b - disc) // (4 * a)
            f = BinaryQF(a, b, c)
            if c >= a and f.is_reduced():
                out.append(f)
        a += 1
    return out


def principal_form(disc: int) -> BinaryQF:
    return BinaryQF(1, disc % 2, (disc % 2 - disc) // 4)


# -- ideals as Z-lattices ------------------------------------------------------

@dataclass(frozen=True)
class Ideal:
    """Fractional-free O_K ideal given by a Z-basis (e1, e2) in Hermite form."""

    disc: int
    basis: tuple

    @classmethod
    def from_generators(cls, disc: int, gens) -> "Ideal":
        """Z-span of the O_K-multiples of ``gens``."""
        omega = QuadElt(Fraction(disc % 2, 2), Fraction(1, 2), disc)
        vecs = []
        for g in gens:
            vecs += [g, g * omega]
        return cls(disc, _hnf(vecs, disc))

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal.from_generators(self.disc, [x * y for x in self.basis for y in other.basis])

    def __pow__(self, n: int) -> "Ideal":
        out = Ideal.from_generators(self.disc, [QuadElt(1, 0, self.disc)])
        for _ in range(n):
            out = out * self
        return out

    def norm(self) -> int:
        (x1, y1), (x2, y2) = (_coords(e) for e in self.basis)
        # coordinates against (1, sqrt(disc)/2); O_K has covolume 1/2 there
        return int(abs(x1 * y2 - x2 * y1) * 2)

    def contains(self, z: QuadElt) -> bool:
        (x1, y1), (x2, y2) = (_coords(e) for e in self.basis)
        x, y = _coords(z)
        det = x1 * y2 - x2 * y1
        s = (x * y2 - x2 * y) / det
        t = (x1 * y - x * y1) / det
        return s.denominator == 1 and t.denominator == 1

    def generator(self) -> QuadElt | None:
        """A generator of the ideal if it is principal, else None."""
        n = self.norm()
        e1, e2 = _lagrange(self.basis)
        # N(x e1 + y e2) = A x^2 + B x y + C y^2
        A = e1.norm()
        C = e2.norm()
        B = (e1 + e2).norm() - A - C
        ymax = isqrt(int(4 * A * n / (4 * A * C - B * B))) + 1
        for y in range(0, ymax + 1):
            centre = -B * y / (2 * A)
            half = isqrt(int(n / A)) + 1
            for x in range(int(centre) - half - 1, int(centre) + half + 2):
                if y == 0 and x <= 0:
                    continue
                z = e1 * x + e2 * y
                if z.norm() == n:
                    return z
        return None


def _coords(z: QuadElt) -> tuple[Fraction, Fraction]:
    return (z.a, z.b)


def _hnf(vecs, disc: int) -> tuple:
    # integer coordinates in the basis (1/2, sqrt(disc)/2)
    rows = [[int(2 * v.a), int(2 * v.b)] for v in vecs]
    # column echelon over Z on 2-vectors
    g2 = 0
    for r in rows:
        g2 = gcd(g2, r[1])
    # find combination with second coordinate g2
    acc = [0, 0]
    cur_g = 0
    for r in rows:
        if r[1] == 0:
            continue
        if cur_g == 0:
            acc, cur_g = list(r), r[1]
            continue
        g, s, t = _xgcd(cur_g, r[1])
        acc = [s * acc[0] + t * r[0], g]
        cur_g = g
    if cur_g < 0:
        acc = [-acc[0], -acc[1]]
        cur_g = -cur_g
    # lattice vectors with zero second coordinate
    g1 = 0
    for r in rows:
        if cur_g:
            k = r[1] // cur_g
            g1 = gcd(g1, r[0] - k * acc[0])
        else:
            g1 = gcd(g1, r[0])
    # second generator's relations: products give the full first-coordinate lattice
    e1 = QuadElt(Fraction(g1, 2), 0, disc)
    x = acc[0] % g1 if g1 else acc[0]
    e2 = QuadElt(Fraction(x, 2), Fraction(cur_g, 2), disc)
    return (e1, e2)


def _lagrange(basis):
    e1, e2 = basis

    def n(z):
        return z.norm()

    if n(e1) > n(e2):
        e1, e2 = e2, e1
    while True:
        # B(e1,e2)/N(e1) with B the associated bilinear form
        b = (n(e1 + e2) - n(e1) - n(e2)) / 2
        m = round(b / n(e1))
        e2 = e2 - e1 * m
        if n(e2) < n(e1):
            e1, e2 = e2, e1
        else:
            return e1, e2


# -- the field -------------------------------------------------------------------

@dataclass(frozen=True)
class ImagQuadField:
    disc: int

    def __post_init__(self):
        if not is_fundamental(self.disc):
            raise ValueError("%d is not a fundamental discriminant" % self.disc)
        if -self.disc <= 4:
            raise ValueError("D_K must exceed 4 (unit group {+-1})")

    @property
    def D(self) -> int:
        return -self.disc

    @property
    def u(self) -> int:
        return 1

    @cached_property
    def forms(self) -> list[BinaryQF]:
        return reduced_forms(self.disc)

    @property
    def h(self) -> int:
        return len(self.forms)

    @property
    def sqrt_disc(self) -> QuadElt:
        return QuadElt(0, 1, self.disc)

    def elt(self, a, b=0) -> QuadElt:
        return QuadElt(a, b, self.disc)

    def identity(self) -> BinaryQF:
        return principal_form(self.disc)

    def composition_table(self) -> dict:
        return {(f, g): f * g for f in self.forms for g in self.forms}

    def splitting(self, ell: int) -> int:
        return kronecker(self.disc, ell)

    def prime_above(self, ell: int) -> BinaryQF:
        """Form (ell, b, c) representing a prime of norm ell; b canonical (smallest >= 0)."""
        if kronecker(self.disc, ell) != 1:
            raise NotSplitError("%d does not split in Q(sqrt(%d))" % (ell, self.disc))
        for b in range(0, 2 * ell):
            if (b * b - self.disc) % (4 * ell) == 0:
                return BinaryQF(ell, b, (b * b - self.disc) // (4 * ell))
        raise AssertionError("unreachable")

    def elements_of_norm(self, n: int) -> list[QuadElt]:
        """All integral elements (U + V sqrt(disc))/2 with norm n."""
        out = []
        V = 0
        while self.D * V * V <= 4 * n:
            rest = 4 * n - self.D * V * V
            U = isqrt(rest)
            if U * U == rest:
                for s in {U, -U}:
                    for t in {V, -V}:
                        if (s - t * (self.disc % 2)) % 2 == 0 and (self.disc % 2 or s % 2 == 0):
                            out.append(QuadElt(Fraction(s, 2), Fraction(t, 2), self.disc))
            V += 1
        return out


def class_group(disc: int) -> list[BinaryQF]:
    return ImagQuadField(disc).forms


def heegner_hypothesis(K: ImagQuadField, N: int):
    """(ok, witness): every prime dividing squarefree N splits; witness lists primes above them."""
    if N < 1:
        raise ValueError("N must be positive")
    if not _squarefree(N):
        raise ValueError("N must be squarefree")
    witness = {}
    for ell in prime_factors(N):
        if kronecker(K.disc, ell) != 1:
            return False, {}
        witness[ell] = K.prime_above(ell)
    return True, witness


# -- split primes ------------------------------------------------------------------

@dataclass(frozen=True)
class SplitPrimeData:
    K: ImagQuadField
    p: int
    M: int
    pi: QuadElt
    pibar: QuadElt
    root: PadicNumber
    varpi: PadicNumber
    flipped: bool = False

    @property
    def h(self) -> int:
        return self.K.h

    def embed(self, z: QuadElt) -> PadicNumber:
        return z.embed(self.root)

    def conjugate(self) -> "SplitPrimeData":
        """Same data for the other prime (the conjugate embedding)."""
        root = -self.root
        return SplitPrimeData(self.K, self.p, self.M, self.pibar, self.pi, root,
                              self.pibar.embed(root) / self.pi.embed(root), not self.flipped)

    def swap_root(self) -> "SplitPrimeData":
        """Keep pi but use the other square root: varpi is inverted, ord_p(varpi) = -h."""
        root = -self.root
        return SplitPrimeData(self.K, self.p, self.M, self.pi, self.pibar, root,
                              self.pi.embed(root) / self.pibar.embed(root), not self.flipped)

    @property
    def varpi_bar(self) -> PadicNumber:
        """pibar/pi under the same embedding, the ratio attached to the conjugate prime."""
        return self.varpi.inverse()

    def to_json(self) -> dict:
        return {
            "p": self.p, "disc": self.K.disc, "h": self.h,
            "pi": [str(self.pi.a), str(self.pi.b)],
            "pibar": [str(self.pibar.a), str(self.pibar.b)],
            "sqrt_disc": self.root.to_json(), "varpi": self.varpi.to_json(),
        }


def split_prime(K: ImagQuadField, p: int, M: int = 20) -> SplitPrimeData:
    """Generator pi of p^h for the prime singled out by the canonical square root of disc."""
    if kronecker(K.disc, p) != 1:
        raise NotSplitError("%d is inert or ramified in Q(sqrt(%d))" % (p, K.disc))
    h = K.h
    if h % p == 0:
        raise PadicError("p divides the class number")
    W = M + h + 2
    root = hensel_sqrt(PadicNumber.from_rational(p, K.disc, W))
    candidates = []
    for z in K.elements_of_norm(p**h):
        v1 = z.embed(root).valuation()
        v2 = z.conj().embed(root).valuation()
        if v1 == h and v2 == 0 and z.b > 0:
            candidates.append(z)
    if not candidates:
        raise AssertionError("no generator of p^h found")
    pi = min(candidates, key=lambda z: (abs(z.a), z.b))
    pibar = pi.conj()
    varpi = (pi.embed(root) / pibar.embed(root)).add_bigoh(M + h)
    return SplitPrimeData(K, p, M, pi, pibar, root, varpi)


# -- characters ----------------------------------------------------------------------

def phi_o(sp: SplitPrimeData, ideal: Ideal) -> PadicNumber:
    """alpha/alpha-bar for (alpha) = ideal^h, embedded at the chosen prime."""
    alpha = (ideal ** sp.h).generator()
    if alpha is None:
        raise AssertionError("ideal^h not principal")
    return sp.embed(alpha) / sp.embed(alpha.conj())


def normalized_log_varpi(sp: SplitPrimeData) -> PadicNumber:
    """log_p(varpi)/h, the logarithm of the 1/h-th power of varpi."""
    return iwasawa_log(sp.varpi) / sp.h


def character_eval(sp: SplitPrimeData, weight_exp, twist_exp, order: int = 2, M: int | None = None) -> TwoVarSeries:
    """Jet of exp(weight_exp*kappa*ell + twist_exp*tau*ell), ell = log_p(varpi)/h.

    With ``(weight_exp, twist_exp) = (-1/2, 0)`` this is (p/varpi)^((k-2)/2) and
    ``(0, -1)`` gives varpi^-t; products of such monomials realize every
    character value on Frobenius used by the multipliers.
    """
    M = M or sp.M
    ell = normalized_log_varpi(sp)
    s = TwoVarSeries(sp.p, M, order)
    arg = s.kappa() * (ell * Fraction(weight_exp)) + s.tau() * (ell * Fraction(twist_exp))
    return arg.exp()


def embedding_context(sp: SplitPrimeData) -> PadicContext:
    return PadicContext(sp.p, sp.M)
