"""Scalar backends and the Z2-grading of the basis.

Two kinds of scalars circulate through the package: exact rationals
(``fractions.Fraction``) for identity checks, and mpmath numbers for the
numerical root solver.  Every routine is written against the plain
field operations so either kind can be passed in.
"""

from fractions import Fraction

import mpmath


class PoleError(ZeroDivisionError):
    """A rational function was evaluated on its pole."""


class Profile:
    """Shape of gl(m|n): parities of the basis and the constant c."""

    def __init__(self, m, n, c=1):
        if m < 1 or n < 1:
            raise ValueError("need m >= 1 and n >= 1, got (%d|%d)" % (m, n))
        c = to_scalar(c)
        if c == 0:
            raise ValueError("c must be nonzero")
        self.m = m
        self.n = n
        self.c = c

    @property
    def N(self):
        return self.m + self.n - 1

    @property
    def dim(self):
        return self.m + self.n

    def parity(self, i):
        if not 1 <= i <= self.m + self.n:
            raise IndexError("basis index %r out of range 1..%d" % (i, self.dim))
        return 0 if i <= self.m else 1

    def cg(self, i):
        """Graded constant c_[i] = (-1)^[i] c."""
        return -self.c if self.parity(i) else self.c

    def mirror(self):
        """Profile of gl(n|m) with the same constant."""
        return Profile(self.n, self.m, self.c)

    def __eq__(self, other):
        return (isinstance(other, Profile)
                and (self.m, self.n, self.c) == (other.m, other.n, other.c))

    def __hash__(self):
        return hash((self.m, self.n, self.c))

    def __repr__(self):
        return "Profile(%d, %d, c=%s)" % (self.m, self.n, format_scalar(self.c))


def to_scalar(x):
    """Coerce ints, strings and exact numbers to Fraction; keep mpmath and series values."""
    if isinstance(x, (mpmath.mpf, mpmath.mpc)) or hasattr(x, "coeffs"):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, float):
        raise TypeError("binary floats are not accepted; use a string or Fraction")
    return Fraction(x)


def is_exact(x):
    return isinstance(x, (int, Fraction))


def format_scalar(x):
    """Serialize a scalar.

    Rationals become "p/q" (or "p" when integral).  mpmath values carry
    their precision: "<value>@<digits>", complex values as "<re>,<im>@<digits>".
    """
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return "%d/%d" % (x.numerator, x.denominator)
    dps = mpmath.mp.dps
    if isinstance(x, mpmath.mpc):
        return "%s,%s@%d" % (mpmath.nstr(x.real, dps, strip_zeros=False),
                             mpmath.nstr(x.imag, dps, strip_zeros=False), dps)
    if isinstance(x, mpmath.mpf):
        return "%s@%d" % (mpmath.nstr(x, dps, strip_zeros=False), dps)
    raise TypeError("cannot serialize %r" % (x,))


def parse_scalar(s):
    """Inverse of format_scalar.

    A multiprecision string is read at max(current, annotated) precision.
    """
    s = s.strip()
    if "@" not in s:
        return Fraction(s)
    body, dps = s.rsplit("@", 1)
    dps = int(dps)
    with mpmath.workdps(max(dps, mpmath.mp.dps)):
        if "," in body:
            re, im = body.split(",")
            val = mpmath.mpc(mpmath.mpf(re), mpmath.mpf(im))
        else:
            val = mpmath.mpf(body)
    return val
