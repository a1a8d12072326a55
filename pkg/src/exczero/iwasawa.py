"""Truncated Iwasawa algebra Z_p[[T]] / (p^M, T^n) with T = gamma - 1, and derivatives at the trivial character."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .padic import PadicError, PadicNumber, iwasawa_log, valuation


class IwasawaElement:
    __slots__ = ("p", "M", "n", "coeffs")

    def __init__(self, p: int, M: int, n: int, coeffs):
        mod = p**M
        c = [int(x) % mod for x in list(coeffs)[:n]]
        c += [0] * (n - len(c))
        self.p, self.M, self.n = p, M, n
        self.coeffs = tuple(c)

    @property
    def mod(self) -> int:
        return self.p**self.M

    def _like(self, coeffs, n=None) -> "IwasawaElement":
        return IwasawaElement(self.p, self.M, self.n if n is None else n, coeffs)

    @classmethod
    def T(cls, p, M, n) -> "IwasawaElement":
        return cls(p, M, n, [0, 1])

    def _check(self, other):
        if (self.p, self.M) != (other.p, other.M):
            raise PadicError("mismatched Iwasawa algebras")

    def __add__(self, other):
        self._check(other)
        n = min(self.n, other.n)
        return self._like([a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], n)

    def __sub__(self, other):
        self._check(other)
        n = min(self.n, other.n)
        return self._like([a - b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], n)

    def __neg__(self):
        return self._like([-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return self._like([a * other for a in self.coeffs])
        self._check(other)
        n = min(self.n, other.n)
        out = [0] * n
        for i, a in enumerate(self.coeffs[:n]):
            if a:
                for j in range(n - i):
                    out[i + j] += a * other.coeffs[j]
        return self._like(out, n)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, IwasawaElement):
            return NotImplemented
        n = min(self.n, other.n)
        return (self.p, self.M) == (other.p, other.M) and self.coeffs[:n] == other.coeffs[:n]

    def __hash__(self):
        return hash((self.p, self.M, self.coeffs))

    def augmentation(self) -> int:
        """Image under T -> 0 (gamma -> 1)."""
        return self.coeffs[0]

    def is_unit(self) -> bool:
        return self.coeffs[0] % self.p != 0

    def inverse(self) -> "IwasawaElement":
        if not self.is_unit():
            raise PadicError("not a unit of the Iwasawa algebra")
        mod = self.mod
        c0 = pow(self.coeffs[0], -1, mod)
        inv = [c0] + [0] * (self.n - 1)
        for k in range(1, self.n):
            inv[k] = -c0 * sum(self.coeffs[i] * inv[k - i] for i in range(1, k + 1)) % mod
        return self._like(inv)

    def divide_by_T(self) -> "IwasawaElement":
        """Exact quotient by T; one order of T-precision is lost."""
        if self.coeffs[0] != 0:
            raise PadicError("augmentation is nonzero: not divisible by T")
        return self._like(self.coeffs[1:], self.n - 1)

    def compose(self, sub: "IwasawaElement") -> "IwasawaElement":
        """F(sub(T)) for a substitution without constant term."""
        if sub.coeffs[0] != 0:
            raise PadicError("substitution must have zero constant term")
        n = min(self.n, sub.n)
        out = self._like([0], n)
        power = self._like([1], n)
        for c in self.coeffs[:n]:
            out = out + power * c
            power = power * sub
        return out

    def __repr__(self):
        terms = " + ".join(f"{c}*T^{i}" for i, c in enumerate(self.coeffs) if c)
        return f"IwasawaElement({terms or 0} mod ({self.p}^{self.M}, T^{self.n}))"


def generator_change(p: int, M: int, n: int, a: int) -> IwasawaElement:
    """T as a series in T' = (1+T)^a - 1, i.e. (1+T')^(1/a) - 1 = sum_k C(1/a, k) T'^k."""
    if a % p == 0:
        raise PadicError("gamma^a is a topological generator only for a prime to p")
    extra = sum(valuation(k, p) for k in range(2, n + 1))
    W = M + extra + 1
    x = pow(a, -1, p**W)
    return IwasawaElement(p, M, n, [0] + [comb(x, k) for k in range(1, n)])


@dataclass(frozen=True)
class TowerClass:
    """Element of the free module Lambda^r at truncation (p^M, T^n)."""

    components: tuple

    def __post_init__(self):
        if not self.components:
            raise ValueError("empty tower class")
        first = self.components[0]
        for c in self.components:
            if (c.p, c.M, c.n) != (first.p, first.M, first.n):
                raise PadicError("components at different truncations")

    @property
    def p(self) -> int:
        return self.components[0].p

    @property
    def M(self) -> int:
        return self.components[0].M

    @property
    def n(self) -> int:
        return self.components[0].n

    @property
    def rank(self) -> int:
        return len(self.components)

    def augmentation(self) -> tuple:
        return tuple(c.augmentation() for c in self.components)

    def scale(self, lam: IwasawaElement) -> "TowerClass":
        return TowerClass(tuple(lam * c for c in self.components))

    def in_generator(self, a: int) -> "TowerClass":
        """Same class written in the coordinate T' attached to gamma^a."""
        sub = generator_change(self.p, self.M, self.n, a)
        return TowerClass(tuple(c.compose(sub) for c in self.components))

    def __eq__(self, other):
        return isinstance(other, TowerClass) and self.components == other.components

    def __hash__(self):
        return hash(self.components)


@dataclass(frozen=True)
class Derivative:
    quotient: TowerClass
    first_coefficient: tuple
    log_eta: PadicNumber
    value: tuple

    def to_json(self) -> dict:
        return {"Z'_gamma,0": list(self.first_coefficient), "log_eta": self.log_eta.to_json(),
                "Z'_0": [v.to_json() for v in self.value], "T_precision": self.quotient.n}


def divide_derivative(Z: TowerClass, eta_gamma: PadicNumber) -> Derivative:
    """Write Z = T * Z' and return Z' with the level-0 derivative Z'_{gamma,0} * log_p(eta(gamma)).

    ``eta_gamma`` is the image of gamma in 1 + pZ_p; the product with log_p is
    what stays fixed when gamma is replaced by another generator.
    """
    if any(Z.augmentation()):
        raise PadicError("Z_0 != 0: the class is not divisible by gamma - 1")
    if eta_gamma.is_zero() or eta_gamma.v != 0 or not (eta_gamma - 1).v >= 1:
        raise PadicError("eta(gamma) must be a 1-unit")
    q = TowerClass(tuple(c.divide_by_T() for c in Z.components))
    first = tuple(c.augmentation() for c in q.components)
    log_eta = iwasawa_log(eta_gamma)
    value = tuple(PadicNumber(Z.p, Z.M, 0, c) * log_eta for c in first)
    return Derivative(q, first, log_eta, value)
