"""Truncated Laurent series in a formal parameter eps with exact coefficients.

Used to evaluate rational expressions at points where single factors have
poles but the total is regular: shift the colliding parameters by distinct
multiples of eps, compute, and read off the eps^0 coefficient.  Each value
tracks an absolute cap: coefficients of eps^k with k >= cap are unknown.
"""

from fractions import Fraction

from .scalars import PoleError

# relative precision used when inverting an exact polynomial
DEFAULT_PRECISION = 12

_INF = float("inf")


class Series:
    __slots__ = ("lo", "coeffs", "cap")

    def __init__(self, coeffs, lo=0, cap=_INF):
        coeffs = list(coeffs)
        if cap != _INF:
            coeffs = coeffs[:max(0, int(cap - lo))]
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            lo += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.lo = lo if coeffs else (cap if cap != _INF else 0)
        self.coeffs = coeffs
        self.cap = cap

    @classmethod
    def const(cls, x):
        return cls([Fraction(x)] if x != 0 else [])

    @classmethod
    def linear(cls, a, b):
        """a + b eps."""
        return cls([Fraction(a), Fraction(b)])

    def coeff(self, k):
        if k >= self.cap:
            raise ArithmeticError("coefficient of eps^%d lost to truncation" % k)
        i = k - self.lo
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    @property
    def valuation(self):
        return self.lo

    def is_zero(self):
        return not self.coeffs

    def _lift(self, other):
        if isinstance(other, Series):
            return other
        if isinstance(other, (int, Fraction)):
            return Series.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        cap = min(self.cap, other.cap)
        if not self.coeffs and not other.coeffs:
            return Series([], cap=cap)
        lo = min(self.lo if self.coeffs else other.lo, other.lo if other.coeffs else self.lo)
        hi = max(self.lo + len(self.coeffs), other.lo + len(other.coeffs))
        if cap != _INF:
            hi = min(hi, int(cap))
        out = [Fraction(0)] * max(0, hi - lo)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                k = s.lo + i - lo
                if 0 <= k < len(out):
                    out[k] += c
        return Series(out, lo, cap)

    __radd__ = __add__

    def __neg__(self):
        return Series([-c for c in self.coeffs], self.lo, self.cap)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        cap = min(self.cap + other.lo, other.cap + self.lo)
        if not self.coeffs or not other.coeffs:
            return Series([], cap=cap)
        lo = self.lo + other.lo
        n = len(self.coeffs) + len(other.coeffs) - 1
        if cap != _INF:
            n = min(n, int(cap - lo))
        out = [Fraction(0)] * max(0, n)
        for i, a in enumerate(self.coeffs):
            if i >= n:
                break
            for j, b in enumerate(other.coeffs):
                if i + j >= n:
                    break
                out[i + j] += a * b
        return Series(out, lo, cap)

    __rmul__ = __mul__

    def inverse(self):
        if not self.coeffs:
            raise PoleError("division by a series with no known nonzero term")
        rp = DEFAULT_PRECISION if self.cap == _INF else int(self.cap - self.lo)
        a = self.coeffs + [Fraction(0)] * max(0, rp - len(self.coeffs))
        b = [1 / a[0]]
        for k in range(1, rp):
            s = sum((a[i] * b[k - i] for i in range(1, k + 1)), Fraction(0))
            b.append(-s / a[0])
        return Series(b, -self.lo, -self.lo + rp)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return (self - other).is_zero()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.coeff(0)) if self.cap > 0 else 0

    def constant(self):
        """The eps^0 coefficient; fails if a pole survives."""
        if self.coeffs and self.lo < 0:
            raise PoleError("series has a pole of order %d" % -self.lo)
        return self.coeff(0)

    def __repr__(self):
        terms = ["%s*e^%d" % (c, self.lo + i) for i, c in enumerate(self.coeffs) if c]
        return "Series(%s + O(e^%s))" % (" + ".join(terms) or "0", self.cap)
