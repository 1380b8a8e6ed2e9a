"""Rational functions of spectral parameters.

All functions take the (possibly graded) constant explicitly, so
``f(u, v, prof.cg(i))`` is f_[i](u, v) and ``f(u, v, prof.c)`` is the
plain f.  Products over sets follow the usual shorthand: a function of
two sets is the double product over their elements, and when both
arguments are the same set the coincident positions are skipped.
"""

from fractions import Fraction
from itertools import permutations

from .scalars import PoleError


def g(u, v, c):
    if u == v:
        raise PoleError("g(u, v) at u = v = %s" % (u,))
    return c / (u - v)


def f(u, v, c):
    if u == v:
        raise PoleError("f(u, v) at u = v = %s" % (u,))
    return (u - v + c) / (u - v)


def h(u, v, c):
    return (u - v + c) / c


def inv(x):
    if x == 0:
        raise PoleError("division by a vanishing factor")
    if isinstance(x, int):
        return Fraction(1, x)
    return 1 / x


def set_product(fn, xs, ys, c):
    """prod over x in xs, y in ys of fn(x, y, c); diagonal skipped if xs is ys."""
    same = xs is ys or (len(xs) == len(ys) and list(xs) == list(ys) and len(xs) > 0)
    out = 1
    for a, x in enumerate(xs):
        for b, y in enumerate(ys):
            if same and a == b:
                continue
            out = out * fn(x, y, c)
    return out


def delta(fn, us, c, primed=False):
    """Delta_fn(u) = prod_{l<l'} fn(u_l', u_l); the primed form swaps arguments."""
    out = 1
    for a in range(len(us)):
        for b in range(a + 1, len(us)):
            if primed:
                out = out * fn(us[a], us[b], c)
            else:
                out = out * fn(us[b], us[a], c)
    return out


def F_norm(prof, l, us, vs=None, hat=False):
    """Normalizer F^(l) of one set or of a pair of sets; hat=True for the mirror form."""
    cl = prof.cg(l + 1) if hat else prof.cg(l)
    c = prof.c
    odd = l == prof.m
    if vs is None:
        out = delta(f, us, cl)
        if odd:
            out = out * inv(delta(h, us, c, primed=hat))
        return out
    out = set_product(f, us, vs, cl)
    if odd:
        if hat:
            out = out * inv(set_product(h, vs, us, c))
        else:
            out = out * inv(set_product(h, us, vs, c))
    return out


def det(rows):
    """Determinant by Gaussian elimination over any field."""
    a = [list(r) for r in rows]
    n = len(a)
    out = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k] != 0), None)
        if piv is None:
            return 0 * out
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            out = -out
        p = a[k][k]
        out = out * p
        for r in range(k + 1, n):
            if a[r][k] != 0:
                m = a[r][k] / p
                row, rk = a[r], a[k]
                for col in range(k, n):
                    row[col] = row[col] - m * rk[col]
    return out


def izergin(ys, xs, c):
    """Izergin determinant K(y|x) with constant c (pass c_[i] for K_[i])."""
    if len(ys) != len(xs):
        raise ValueError("Izergin determinant needs equal sizes, got %d and %d"
                         % (len(ys), len(xs)))
    if not ys:
        return 1
    mat = [[g(y, x, c) * inv(h(y, x, c)) for x in xs] for y in ys]
    return (delta(g, ys, c) * delta(g, xs, c, primed=True)
            * set_product(h, ys, xs, c) * det(mat))


def izergin_sym(ys, xs, c):
    """Same quantity from the symmetrization over x (factorial cost)."""
    if len(ys) != len(xs):
        raise ValueError("Izergin determinant needs equal sizes, got %d and %d"
                         % (len(ys), len(xs)))
    p = len(ys)
    total = 0
    for perm in permutations(xs):
        term = delta(f, perm, c, primed=True)
        for a in range(p):
            term = term * g(ys[a], perm[a], c)
            for b in range(a + 1, p):
                term = term * f(ys[b], perm[a], c)
        total = total + term
    return total if p else 1


def cauchy(ys, xs, c):
    """C(y|x) = g(y, x) h(x, x)."""
    if len(ys) != len(xs):
        raise ValueError("Cauchy product needs equal sizes")
    return set_product(g, ys, xs, c) * set_product(h, xs, xs, c)


def cauchy_hat(ys, xs, c):
    """C^(y|x) = g(x, y) h(y, y) = C(x|y)."""
    return cauchy(xs, ys, c)


def theta(i, j):
    return 1 if i <= j else 0
