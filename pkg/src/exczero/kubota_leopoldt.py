"""Kubota-Leopoldt p-adic L-functions of odd quadratic characters, twisted by powers of omega.

For a branch ``i`` the values at s = 1 - n with n = i (mod p-1) are

    L_p(1 - n, chi omega^i) = -(1 - chi(p) p^(n-1)) B_{n,chi} / n.

Writing n = n0 + j(p-1), the function j -> L_p(1 - n) extends to Z_p and its
Mahler coefficients c_m satisfy ord_p(c_m) >= m, so finitely many exact node
values determine L_p and its s-derivative to any fixed precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .padic import PadicError, PadicNumber, valuation
from .quadfield import ImagQuadField, kronecker_symbol

# L_p'(0, chi_K omega) = FG_CONSTANT * L_chi * L(0, chi_K), frozen after the
# empirical calibration over several split pairs (see tests).
FG_CONSTANT = Fraction(-1)


@lru_cache(maxsize=None)
def bernoulli_numbers(n: int) -> tuple[Fraction, ...]:
    """B_0..B_n with B_1 = -1/2."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return tuple(B)


@dataclass(frozen=True)
class DirichletCharacterData:
    """The Kronecker character of a negative fundamental discriminant."""

    disc: int
    values: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        D = abs(self.disc)
        object.__setattr__(self, "values", tuple(kronecker_symbol(self.disc, a) for a in range(D)))

    @classmethod
    def of_field(cls, K: ImagQuadField) -> "DirichletCharacterData":
        return cls(K.disc)

    @property
    def modulus(self) -> int:
        return abs(self.disc)

    @property
    def is_odd(self) -> bool:
        return self(-1) == -1

    def __call__(self, a: int) -> int:
        return self.values[a % self.modulus]

    def generalized_bernoulli(self, n: int) -> Fraction:
        """B_{n,chi} = D^(n-1) sum_a chi(a) B_n(a/D), expanded as sum_k C(n,k) B_k D^(k-1) S_{n-k}."""
        D = self.modulus
        B = bernoulli_numbers(n)
        S = _power_sums(self, n)
        return sum((comb(n, k) * B[k] * Fraction(D) ** (k - 1) * S[n - k] for k in range(n + 1)), Fraction(0))

    def classical_l_at_zero(self) -> Fraction:
        """L(0, chi) = -B_{1,chi} = -(1/D) sum_a a chi(a)."""
        D = self.modulus
        return -Fraction(sum(a * self(a) for a in range(1, D)), D)


def _power_sums(chi: DirichletCharacterData, n: int) -> list[int]:
    D = chi.modulus
    S = [0] * (n + 1)
    for a in range(1, D):
        c = chi(a)
        if c:
            x = 1
            for m in range(n + 1):
                S[m] += c * x
                x *= a
    return S


def node_value(chi: DirichletCharacterData, p: int, n: int) -> Fraction:
    """-(1 - chi(p) p^(n-1)) B_{n,chi}/n, the value at s = 1 - n on the branch n mod (p-1)."""
    return -(1 - chi(p) * Fraction(p) ** (n - 1)) * chi.generalized_bernoulli(n) / n


def minimal_nodes(p: int, M: int) -> int:
    """Nodes needed so the dropped Mahler terms c_m/m lie in p^M Z_p."""
    N = M
    while any(m - _floor_log(m, p) < M for m in range(N + 1, N + 2 * p + 2)):
        N += 1
    return N


def _floor_log(n: int, p: int) -> int:
    e = 0
    while p ** (e + 1) <= n:
        e += 1
    return e


@dataclass
class KLSeries:
    """Mahler expansion of j -> L_p(s0 - j(p-1), chi omega^i)."""

    chi: DirichletCharacterData
    p: int
    M: int
    branch: int
    n0: int
    mahler: list[Fraction]

    @property
    def nodes(self) -> int:
        return len(self.mahler) - 1

    def s_of_j(self, j) -> Fraction:
        return 1 - self.n0 - j * (self.p - 1)

    def value_at_j(self, x: PadicNumber | int) -> PadicNumber:
        p, M = self.p, self.M
        if isinstance(x, int):
            X = x
        else:
            if x.v < 0:
                raise PadicError("Mahler series evaluated outside Z_p")
            X = x.lift_int()
        # C(x, m) = C(X, m) mod p^(W - ord(m!)) when x = X mod p^W
        total = PadicNumber.zero(p, M)
        for m, c in enumerate(self.mahler):
            b = comb(X, m) if X >= 0 else _binom_signed(X, m)
            total = total + PadicNumber.from_rational(p, c * b, M)
        if not isinstance(x, int):
            # ord_p(c_m) >= m >= ord_p(m!) absorbs the loss in C(X, m)
            total = total.add_bigoh(x.prec)
        return total

    def value(self, s) -> PadicNumber:
        """L_p(s, chi omega^i) for s in Z_p (int, Fraction or PadicNumber)."""
        p = self.p
        if isinstance(s, PadicNumber):
            j = (PadicNumber.from_rational(p, 1 - self.n0, s.prec) - s) / (p - 1)
            return self.value_at_j(j)
        j = Fraction(1 - self.n0 - Fraction(s), p - 1)
        if j.denominator == 1:
            return self.value_at_j(int(j))
        return self.value_at_j(PadicNumber.from_rational(p, j, self.M + 4 * self.nodes))

    def derivative_at_j0(self) -> PadicNumber:
        """d/dj at j = 0: sum_m c_m (-1)^(m-1)/m."""
        acc = Fraction(0)
        for m in range(1, len(self.mahler)):
            acc += self.mahler[m] * (-1) ** (m - 1) / m
        return PadicNumber.from_rational(self.p, acc, self.M)

    def derivative_at_s0(self) -> PadicNumber:
        """dL_p/ds at s = 1 - n0 (ds/dj = -(p-1))."""
        return self.derivative_at_j0() / (-(self.p - 1))

    def nodes_check(self, extra: int) -> list[tuple[int, bool]]:
        """Compare the series with exact node values beyond the fitted range."""
        out = []
        for j in range(self.nodes + 1, self.nodes + 1 + extra):
            n = self.n0 + j * (self.p - 1)
            exact = PadicNumber.from_rational(self.p, node_value(self.chi, self.p, n), self.M)
            out.append((n, self.value_at_j(j).agrees_with(exact, self.M)))
        return out


def _binom_signed(x: int, m: int) -> int:
    num = 1
    for i in range(m):
        num *= x - i
    den = 1
    for i in range(2, m + 1):
        den *= i
    return num // den


def kl_series(chi: DirichletCharacterData, p: int, M: int, branch: int = 1, nodes: int | None = None) -> KLSeries:
    if p < 5 or chi.modulus % p == 0:
        raise PadicError("need p >= 5 prime to the conductor")
    N = minimal_nodes(p, M) if nodes is None else nodes
    if nodes is not None and nodes < minimal_nodes(p, M):
        raise PadicError("%d nodes cannot reach precision p^%d (need %d)" % (nodes, M, minimal_nodes(p, M)))
    n0 = branch % (p - 1) or (p - 1)
    vals = [node_value(chi, p, n0 + j * (p - 1)) for j in range(N + 1)]
    mahler = []
    diff = list(vals)
    for m in range(N + 1):
        mahler.append(diff[0])
        diff = [diff[i + 1] - diff[i] for i in range(len(diff) - 1)]
    return KLSeries(chi, p, M, branch, n0, mahler)


def kl_value(chi: DirichletCharacterData, s, p: int, M: int, branch: int = 1) -> PadicNumber:
    return kl_series(chi, p, M, branch).value(s)


def mahler_valuation_defect(series: KLSeries) -> int:
    """max(m - ord_p(c_m)) over nonzero c_m; non-positive when ord_p(c_m) >= m holds."""
    worst = -10**9
    for m, c in enumerate(series.mahler):
        if c:
            worst = max(worst, m - (valuation(c.numerator, series.p) - valuation(c.denominator, series.p)))
    return worst


@dataclass
class FGReport:
    p: int
    disc: int
    M: int
    L_p_at_zero: PadicNumber
    L_p_prime: PadicNumber
    L_classical: Fraction
    ratio: PadicNumber
    L_chi: PadicNumber
    constant: Fraction
    agree: bool
    precision: int

    def to_json(self) -> dict:
        return {
            "p": self.p, "disc": self.disc, "M": self.M,
            "L_p(0)": self.L_p_at_zero.to_json(), "L_p'(0)": self.L_p_prime.to_json(),
            "L(0,chi)": str(self.L_classical), "ratio": self.ratio.to_json(),
            "L_chi": self.L_chi.to_json(), "constant": str(self.constant),
            "agree": self.agree, "precision": self.precision,
        }


def fg_ratio(K: ImagQuadField, p: int, M: int) -> tuple[PadicNumber, PadicNumber, Fraction, KLSeries]:
    chi = DirichletCharacterData.of_field(K)
    if chi(p) != 1:
        raise PadicError("no trivial zero: %d does not split in Q(sqrt(%d))" % (p, K.disc))
    ser = kl_series(chi, p, M)
    L0 = ser.value_at_j(0)
    d = ser.derivative_at_s0()
    lc = chi.classical_l_at_zero()
    return d / lc, L0, lc, ser


def fg_crosscheck(K: ImagQuadField, p: int, L_chi: PadicNumber, M: int,
                  constant: Fraction = FG_CONSTANT) -> FGReport:
    """Compare L_p'(0, chi_K omega)/L(0, chi_K) with constant * L_chi."""
    ratio, L0, lc, ser = fg_ratio(K, p, M)
    target = L_chi * constant
    prec = min(ratio.prec, target.prec)
    return FGReport(p, K.disc, M, L0, ser.derivative_at_s0(), lc, ratio, L_chi, constant,
                    ratio.agrees_with(target, prec) and L0.is_zero(), prec)
