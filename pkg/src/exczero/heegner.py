"""Points of E(K), their localization at the chosen prime above p, and the formal-group logarithm."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .ellcurve import EllipticCurveData
from .padic import PadicError, PadicNumber
from .quadfield import ImagQuadField, QuadElt, SplitPrimeData, heegner_hypothesis, kronecker

DEFAULT_M_BOUND = 60


@dataclass(frozen=True)
class HeegnerPointData:
    """A point of E(K) with coordinates rat + sqrt_coeff * sqrt(disc)."""

    curve_label: str
    disc: int
    x: QuadElt
    y: QuadElt
    provenance: str = "catalog"

    @classmethod
    def from_coords(cls, label, disc, x, y, provenance="catalog") -> "HeegnerPointData":
        return cls(label, disc, QuadElt(Fraction(x[0]), Fraction(x[1]), disc),
                   QuadElt(Fraction(y[0]), Fraction(y[1]), disc), provenance)

    @property
    def point(self) -> tuple[QuadElt, QuadElt]:
        return (self.x, self.y)

    def to_json(self) -> dict:
        return {
            "disc": self.disc,
            "x": {"rat": str(self.x.a), "sqrt_coeff": str(self.x.b)},
            "y": {"rat": str(self.y.a), "sqrt_coeff": str(self.y.b)},
            "provenance": self.provenance,
        }


# -- hypotheses ------------------------------------------------------------------------

NOT_MACHINE_CHECKED = "not machine-checked"


def check_hypotheses(E: EllipticCurveData, K: ImagQuadField, p: int) -> dict:
    """Computable parts of the running assumptions, each as PASS/FAIL."""
    checks: dict[str, object] = {}
    checks["p >= 5"] = p >= 5
    checks["p prime"] = p > 1 and all(p % d for d in range(2, int(p**0.5) + 1))
    checks["p exactly divides the conductor"] = E.conductor % p == 0 and (E.conductor // p) % p != 0
    N = E.conductor // p if E.conductor % p == 0 else E.conductor
    checks["split multiplicative at p (a_p = +1)"] = E.conductor % p == 0 and E.ap(p) == 1
    checks["ordinary at p"] = E.ap(p) % p != 0
    checks["p splits in K"] = kronecker(K.disc, p) == 1
    try:
        ok, _ = heegner_hypothesis(K, N)
    except ValueError:
        ok = False
    checks["Heegner hypothesis for N"] = ok
    checks["p does not divide h_K"] = K.h % p != 0
    checks["D_K > 4"] = K.D > 4
    checks["residual irreducibility"] = NOT_MACHINE_CHECKED
    checks["residual ramification"] = NOT_MACHINE_CHECKED
    return checks


def hypotheses_hold(checks: dict) -> bool:
    return all(v is True for v in checks.values() if v != NOT_MACHINE_CHECKED)


# -- localization ----------------------------------------------------------------------

def _loc(c, sp: SplitPrimeData, prec: int) -> PadicNumber:
    if isinstance(c, PadicNumber):
        return c
    if isinstance(c, QuadElt):
        if c.b == 0:
            return PadicNumber.from_rational(sp.p, c.a, prec)
        return c.embed(sp.root).add_bigoh(prec)
    return PadicNumber.from_rational(sp.p, Fraction(c), prec)


def localize_point(P, sp: SplitPrimeData, prec: int | None = None):
    """Apply sqrt(disc) -> the canonical Hensel root to both coordinates; O passes through."""
    if P is None:
        return None
    prec = prec or sp.M
    return (_loc(P[0], sp, prec), _loc(P[1], sp, prec))


# -- formal group ---------------------------------------------------------------------

_LOG_CACHE: dict = {}


def formal_log_coefficients(E: EllipticCurveData, n: int) -> list[Fraction]:
    """c_1..c_n (index 0 unused) with log(z) = sum c_k z^k / k in the parameter z = -x/y."""
    key = (E.ainvs, n)
    if key in _LOG_CACHE:
        return _LOG_CACHE[key]
    a1, a2, a3, a4, a6 = E.ainvs
    L = n + 4
    # w = z^3 u(z) solves w = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3
    w = [0] * (L + 3)
    w[3] = 1
    for _ in range(L):
        w2 = _smul(w, w, L + 2)
        w3 = _smul(w2, w, L + 2)
        new = [0] * (L + 3)
        new[3] = 1
        for k in range(L + 3):
            t = 0
            if k >= 1:
                t += a1 * w[k - 1] + a4 * w2[k - 1]
            if k >= 2:
                t += a2 * w[k - 2]
            t += a3 * w2[k] + a6 * w3[k]
            new[k] += t
        if new == w:
            break
        w = new
    u = [Fraction(c) for c in w[3:]] + [Fraction(0)] * 3
    u = u[: L]
    zdu = [k * u[k] for k in range(L)]
    # omega/dz = (2 + z u'/u) / (2 - a1 z - a3 z^3 u)
    zdu_u = _smul(zdu, _sinv(u, L), L - 1)
    num = [Fraction(2) if k == 0 else Fraction(0) for k in range(L)]
    num = [num[k] + zdu_u[k] for k in range(L)]
    den = [Fraction(0)] * L
    den[0] = Fraction(2)
    if L > 1:
        den[1] -= a1
    for k in range(L - 3):
        den[k + 3] -= a3 * u[k]
    omega = _smul(num, _sinv(den, L), L - 1)
    # omega = sum_k c_{k+1} z^k dz
    out = [Fraction(0)] + [omega[k] for k in range(n)]
    _LOG_CACHE[key] = out
    return out


def _smul(a, b, n):
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j in range(min(len(b), n + 1 - i)):
                out[i + j] += x * b[j]
    return out


def _sinv(a, n):
    inv = [Fraction(0)] * n
    inv[0] = Fraction(1) / a[0]
    for k in range(1, n):
        inv[k] = -sum(a[i] * inv[k - i] for i in range(1, min(k, len(a) - 1) + 1)) / a[0]
    return inv


def formal_log_z(E: EllipticCurveData, z: PadicNumber) -> PadicNumber:
    """sum c_k z^k / k for ord_p(z) >= 1, truncated once every dropped term is below p^prec."""
    if z.is_zero():
        return PadicNumber.zero(z.p, z.prec)
    if z.v < 1:
        raise PadicError("formal logarithm needs ord_p(z) >= 1, got %d" % z.v)
    p, prec = z.p, z.prec
    n = 1
    while any(k * z.v - _flog(k, p) < prec for k in range(n + 1, n + 2 * p + 2)):
        n += 1
    c = formal_log_coefficients(E, n)
    acc = PadicNumber.zero(p, prec)
    zk = PadicNumber.from_rational(p, 1, prec)
    for k in range(1, n + 1):
        zk = zk * z
        if c[k]:
            acc = acc + zk * (c[k] / k)
    return acc.add_bigoh(prec)


def _flog(n: int, p: int) -> int:
    e = 0
    while p ** (e + 1) <= n:
        e += 1
    return e


@dataclass
class FormalLogResult:
    value: PadicNumber
    m: int
    z: PadicNumber | None
    torsion: bool = False
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"value": self.value.to_json(), "m": self.m, "torsion": self.torsion,
                "z": self.z.to_json() if self.z is not None else None, "notes": list(self.notes)}


def kernel_multiple(E: EllipticCurveData, P, loc, bound: int = DEFAULT_M_BOUND, start: int = 1):
    """Smallest m >= start (and m a multiple of start) with mP in the kernel of reduction.

    Returns (m, mP) with mP = None for torsion detected along the way, or raises
    when the bound is exhausted.
    """
    Q = E.mul(start, P)
    step = E.mul(start, P)
    m = start
    while m <= bound * start:
        if Q is None:
            return m, None
        x = loc(Q[0])
        if not x.is_zero() and x.v <= -2:
            return m, Q
        Q = E.add(Q, step)
        m += start
    raise PadicError("no multiple up to %d lands in the formal group" % (bound * start))


def formal_log(E: EllipticCurveData, P, loc, prec: int, m: int | None = None,
               bound: int = DEFAULT_M_BOUND) -> FormalLogResult:
    """log_E(P) = log(z(mP))/m with z = -x/y, computing mP in P's own coordinate field.

    ``loc`` maps a coordinate to a PadicNumber; pass ``m`` to force a multiple of
    the minimal one (used for the independence check).
    """
    if P is None:
        return FormalLogResult(PadicNumber.zero(_prime_of(loc, E), prec), 1, None)
    m0, Q = kernel_multiple(E, P, loc, bound)
    if Q is None:
        return FormalLogResult(PadicNumber.zero(_prime_of(loc, E), prec), m0, None, True, ["torsion point"])
    if m is not None:
        if m % m0:
            raise PadicError("m=%d is not a multiple of the minimal m=%d" % (m, m0))
        Q = E.mul(m // m0, Q)
        if Q is None:
            return FormalLogResult(PadicNumber.zero(_prime_of(loc, E), prec), m, None, True, ["torsion point"])
    else:
        m = m0
    x, y = loc(Q[0]), loc(Q[1])
    z = (-x / y).add_bigoh(prec)
    val = formal_log_z(E, z) / m
    return FormalLogResult(val, m, z, False, ["Neron differential, Manin constant assumed 1"])


def _prime_of(loc, E):
    return loc(Fraction(1)).p


def point_formal_log(E: EllipticCurveData, P, sp: SplitPrimeData, prec: int | None = None,
                     m: int | None = None) -> FormalLogResult:
    """formal_log for a point with coordinates in Q or K, multiples taken exactly before localizing."""
    prec = prec or sp.M
    W = prec + 8

    def loc(c):
        return _loc(c, sp, W)

    return formal_log(E, P, loc, prec, m)


def padic_formal_log(E: EllipticCurveData, P, prec: int, m: int | None = None) -> FormalLogResult:
    """formal_log for a point already over Q_p (group law in tracked p-adic arithmetic)."""
    p = P[0].p if P is not None else E.p
    return formal_log(E, P, lambda c: c if isinstance(c, PadicNumber) else PadicNumber.from_rational(p, c, prec), prec, m)


def pgz_value(E: EllipticCurveData, P, sp: SplitPrimeData, prec: int | None = None) -> FormalLogResult:
    """(1 - 1/p) log(loc P): the value L_p(f)(N_K) at the norm character."""
    r = point_formal_log(E, P, sp, prec)
    factor = 1 - Fraction(1, sp.p)
    return FormalLogResult(r.value * factor, r.m, r.z, r.torsion, r.notes + ["scaled by 1 - 1/p"])
