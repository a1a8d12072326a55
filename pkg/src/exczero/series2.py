"""Truncated bivariate power series in (kappa, tau) = (k - 2, t) over Q_p."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .padic import PadicError, PadicNumber


class TwoVarSeries:
    """Power series mod (kappa, tau)^(order+1) with PadicNumber coefficients."""

    __slots__ = ("p", "prec", "order", "coeffs")

    def __init__(self, p: int, prec: int, order: int, coeffs=None):
        self.p = p
        self.prec = prec
        self.order = order
        self.coeffs: dict[tuple[int, int], PadicNumber] = {}
        for (i, j), c in (coeffs or {}).items():
            if i + j <= order:
                self.coeffs[(i, j)] = self._scalar(c)

    def _scalar(self, c) -> PadicNumber:
        if isinstance(c, PadicNumber):
            return c
        return PadicNumber.from_rational(self.p, Fraction(c), self.prec)

    def _like(self, coeffs) -> "TwoVarSeries":
        return TwoVarSeries(self.p, self.prec, self.order, coeffs)

    @classmethod
    def constant(cls, p, prec, order, c) -> "TwoVarSeries":
        return cls(p, prec, order, {(0, 0): c})

    def kappa(self) -> "TwoVarSeries":
        return self._like({(1, 0): 1})

    def tau(self) -> "TwoVarSeries":
        return self._like({(0, 1): 1})

    def coeff(self, i: int, j: int) -> PadicNumber:
        if i + j > self.order:
            raise PadicError("coefficient (%d,%d) beyond truncation order %d" % (i, j, self.order))
        return self.coeffs.get((i, j), PadicNumber.zero(self.p, self.prec))

    def value_at_origin(self) -> PadicNumber:
        return self.coeff(0, 0)

    def d_kappa(self) -> PadicNumber:
        return self.coeff(1, 0)

    def d_tau(self) -> PadicNumber:
        return self.coeff(0, 1)

    def _lift(self, other) -> "TwoVarSeries":
        if isinstance(other, TwoVarSeries):
            if other.order != self.order:
                other = TwoVarSeries(other.p, other.prec, min(self.order, other.order), other.coeffs)
            return other
        return self._like({(0, 0): other})

    def __add__(self, other):
        other = self._lift(other)
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return TwoVarSeries(self.p, self.prec, order, out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TwoVarSeries):
            s = self._scalar(other)
            return self._like({k: c * s for k, c in self.coeffs.items()})
        order = min(self.order, other.order)
        out: dict = {}
        for (i1, j1), a in self.coeffs.items():
            for (i2, j2), b in other.coeffs.items():
                k = (i1 + i2, j1 + j2)
                if k[0] + k[1] > order:
                    continue
                out[k] = out[k] + a * b if k in out else a * b
        return TwoVarSeries(self.p, self.prec, order, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TwoVarSeries):
            return self * other.inverse()
        return self * self._scalar(other).inverse()

    def __pow__(self, n: int):
        out = self._like({(0, 0): 1})
        for _ in range(n):
            out = out * self
        return out

    def inverse(self) -> "TwoVarSeries":
        c = self.value_at_origin()
        if c.is_zero():
            raise PadicError("series with vanishing constant term is not invertible")
        ci = c.inverse()
        # 1/F = c^-1 * sum (1 - F/c)^n, (1 - F/c) has no constant term
        g = 1 - self * ci
        g.coeffs.pop((0, 0), None)
        out = self._like({(0, 0): 1})
        term = self._like({(0, 0): 1})
        for _ in range(self.order):
            term = term * g
            out = out + term
        return out * ci

    def exp(self) -> "TwoVarSeries":
        c = self.coeffs.get((0, 0))
        if c is not None and not c.is_zero():
            raise PadicError("exp of a jet needs zero constant term")
        f = self._like({k: v for k, v in self.coeffs.items() if k != (0, 0)})
        out = self._like({(0, 0): 1})
        term = self._like({(0, 0): 1})
        for n in range(1, self.order + 1):
            term = term * f
            out = out + term * Fraction(1, factorial(n))
        return out

    def substitute(self, kappa: "TwoVarSeries", tau: "TwoVarSeries") -> "TwoVarSeries":
        """F(kappa(.,.), tau(.,.)) for substitutions without constant term."""
        for s in (kappa, tau):
            c = s.coeffs.get((0, 0))
            if c is not None and not c.is_zero():
                raise PadicError("substitution must fix the origin")
        out = self._like({})
        kp = [self._like({(0, 0): 1})]
        tp = [self._like({(0, 0): 1})]
        for _ in range(self.order):
            kp.append(kp[-1] * kappa)
            tp.append(tp[-1] * tau)
        for (i, j), c in self.coeffs.items():
            out = out + kp[i] * tp[j] * c
        return out

    def linear_change(self, a, b, c, d) -> "TwoVarSeries":
        """F(a*kappa + b*tau, c*kappa + d*tau)."""
        k, t = self.kappa(), self.tau()
        return self.substitute(k * a + t * b, k * c + t * d)

    def restrict_to_line(self, slope) -> "TwoVarSeries":
        """F(kappa, slope*kappa), returned as a series in kappa alone."""
        return self.linear_change(1, 0, slope, 0)

    def nonzero_terms(self, prec: int) -> list[tuple[int, int]]:
        return sorted(k for k, c in self.coeffs.items() if not c.agrees_with(0, prec))

    def agrees_with(self, other: "TwoVarSeries", prec: int) -> bool:
        return not (self - other).nonzero_terms(prec)

    def min_precision(self) -> int:
        return min((c.prec for c in self.coeffs.values()), default=self.prec)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "coeffs": {f"{i},{j}": c.to_json() for (i, j), c in sorted(self.coeffs.items())},
        }

    def __repr__(self):
        terms = ", ".join(f"k^{i}t^{j}: {c}" for (i, j), c in sorted(self.coeffs.items()))
        return f"TwoVarSeries({terms})"
