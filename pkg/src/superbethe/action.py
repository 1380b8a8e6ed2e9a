"""Action of upper triangular monodromy entries on Bethe vectors.

``action_formula`` evaluates the closed sum over (p, q) windows and over the
choice of one distinguished parameter on each affected level.  The full
symmetrization over a level only sees which element is distinguished, so
each choice is counted once and the factorial normalization drops out.
``direct_action`` is the brute-force oracle.
"""

from itertools import product

from . import builder
from .graded import Ket
from .kernel import f, g, h, inv, set_product, theta
from .partitions import BetheParams
from .series import Series


def _sgn(e):
    return -1 if e % 2 else 1


def phi(prof, i, j, q):
    if q == j:
        return 1
    pi, pj, pq = prof.parity(i), prof.parity(j), prof.parity(q)
    return _sgn((pi + pj) * pq + pi * pj)


def phi_hat(prof, i, j, p):
    return 1 if p == i else _sgn(1 + prof.parity(i))


def eps(prof, i, j, p):
    return 1 if p == i else _sgn(1 + prof.parity(i))


def eps_hat(prof, i, j, p, q):
    if q == j:
        return 1
    pj, pp, pq = prof.parity(j), prof.parity(p), prof.parity(q)
    return _sgn((pj + pp) * pq + pj * pp)


def upf(prof, p, i, j, q):
    """The common phase of a (p, q) window; raises if the two routes disagree."""
    a = phi(prof, i, j, q) * eps(prof, i, j, p)
    b = phi_hat(prof, i, j, p) * eps_hat(prof, i, j, p, q)
    if a != b:
        raise ArithmeticError("phase mismatch at p=%d i=%d j=%d q=%d" % (p, i, j, q))
    return a


def windows(prof, i, j):
    return [(p, q) for p in range(1, i + 1) for q in range(j, prof.N + 2)]


def _split_levels(params, p, i, j, q, choice):
    """Distinguished element and remainder per affected level."""
    picked, rest = {}, {}
    for s, idx in choice.items():
        lv = params.level(s)
        picked[s] = lv[idx]
        rest[s] = lv[:idx] + lv[idx + 1:]
    return picked, rest


def D(prof, params, p, i, j, q, picked, rest, hat=False):
    """Normalization of one window; the hatted form uses the mirror conventions."""
    c, m = prof.c, prof.m
    out = 1
    for s in range(p, i):
        t, tb = picked[s], rest[s]
        if hat:
            out = out * set_product(f, (t,), tb, prof.cg(s + 1))
            if s == m:
                out = out * inv(set_product(h, tb, (t,), c))
        else:
            out = out * set_product(f, (t,), tb, prof.cg(s))
            if s == m:
                out = out * inv(_sgn(len(params.level(s)) - 1) * set_product(h, (t,), tb, c))
    for s in range(j, q):
        t, tb = picked[s], rest[s]
        if hat:
            out = out * set_product(f, tb, (t,), prof.cg(s + 1))
            if s == m:
                out = out * inv(_sgn(len(params.level(s)) - 1) * set_product(h, (t,), tb, c))
        else:
            out = out * set_product(f, tb, (t,), prof.cg(s))
            if s == m:
                out = out * inv(set_product(h, tb, (t,), c))
    return out


def Y(prof, params, z, p, i, j, q, picked, rest):
    c, m = prof.c, prof.m
    lv = params.level
    out = set_product(f, (z,), lv(p - 1), prof.cg(p)) * set_product(f, lv(q), (z,), prof.cg(q))
    for s in range(p, q):
        if s == m:
            out = out * set_product(h, rest.get(s, lv(s)), (z,), c)
    if p < i:
        out = out * g(z, picked[p], c)
        for s in range(p, i - 1):
            out = out * g(picked[s + 1], picked[s], prof.cg(s + 1))
        for s in range(p - 1, i - 1):
            out = out * inv(set_product(f, (picked[s + 1],), lv(s), prof.cg(s + 1)))
    if q > j:
        out = out * g(z, picked[q - 1], c)
        for s in range(j, q - 1):
            out = out * g(picked[s + 1], picked[s], prof.cg(s + 1))
        for s in range(j, q):
            out = out * inv(set_product(f, lv(s + 1), (picked[s],), prof.cg(s + 1)))
    return out


def Lam(chain, z, p, i, j, q, picked):
    out = 1
    for s in range(p, i):
        out = out * chain.lam(s + 1, picked[s])
    for s in range(j, q):
        out = out * chain.lam(s, picked[s])
    if p == q:
        out = out * chain.lam(p, z)
    for s in range(p + 1, q):
        out = out * inv(chain.lam(s, z))
    return out


class _Table(BetheParams):
    """Parameter table that may repeat one value on neighbouring levels."""

    def __init__(self, prof, levels):
        self.prof = prof
        self.levels = tuple(tuple(lv) for lv in levels)


def action_terms(chain, i, j, z, params):
    """Yield (coefficient, shifted parameters) for every window and choice."""
    prof = chain.prof
    if i > j:
        raise IndexError("the closed formula covers i <= j only, got (%d, %d)" % (i, j))
    for p, q in windows(prof, i, j):
        levels = list(range(p, i)) + list(range(j, q))
        ranges = [range(len(params.level(s))) for s in levels]
        sign = upf(prof, p, i, j, q)
        for idx in product(*ranges):
            choice = dict(zip(levels, idx))
            picked, rest = _split_levels(params, p, i, j, q, choice)
            coeff = (sign * D(prof, params, p, i, j, q, picked, rest)
                     * Y(prof, params, z, p, i, j, q, picked, rest)
                     * Lam(chain, z, p, i, j, q, picked))
            new = [list(lv) for lv in params.levels]
            for s in range(p, q):
                base = rest[s] if s in rest else params.level(s)
                new[s - 1] = [z] + list(base)
            yield coeff, _Table(prof, new)


def build_regular(chain, params, flavor="forward"):
    """Bethe vector that tolerates one value shared by neighbouring levels.

    The partition sum is regular there but single factors are not, so a
    value repeated across levels is shifted to value + l*eps on level l and
    the eps^0 part of the result is kept.
    """
    seen = {}
    for l, lv in enumerate(params.levels, 1):
        for x in lv:
            seen.setdefault(x, []).append(l)
    shared = {x for x, ls in seen.items() if len(ls) > 1}
    if not shared:
        return builder.build(chain, params, flavor)
    levels = [[Series.linear(x, l) if x in shared else x for x in lv]
              for l, lv in enumerate(params.levels, 1)]
    raw = builder.build(chain, BetheParams(chain.prof, levels), flavor)
    out = Ket()
    for key, val in raw.items():
        out.add_term(key, val.constant() if isinstance(val, Series) else val)
    return out


def action_formula(chain, i, j, z, params, flavor="forward"):
    out = Ket()
    for coeff, shifted in action_terms(chain, i, j, z, params):
        if coeff == 0:
            continue
        out = out + build_regular(chain, shifted, flavor) * coeff
    return out


def direct_action(chain, i, j, z, params, flavor="forward"):
    return chain.apply(i, j, z, builder.build(chain, params, flavor))


def bethe_sides(chain, params, l, k):
    """Both sides of the Bethe equation for the k-th root of level l."""
    prof = chain.prof
    c, m = prof.c, prof.m
    lv = params.level
    t = lv(l)[k]
    tb = lv(l)[:k] + lv(l)[k + 1:]
    lhs = chain.lam(l + 1, t) * inv(chain.lam(l, t))
    rhs = (set_product(f, tb, (t,), prof.cg(l)) * inv(set_product(f, (t,), tb, prof.cg(l)))
           * set_product(f, (t,), lv(l - 1), prof.cg(l))
           * inv(set_product(f, lv(l + 1), (t,), prof.cg(l + 1))))
    if l == m:
        rhs = rhs * _sgn(len(lv(l)) - 1) * set_product(h, (t,), tb, c) * inv(set_product(h, tb, (t,), c))
    return lhs, rhs


def bethe_residual(chain, params, l, k):
    lhs, rhs = bethe_sides(chain, params, l, k)
    return lhs * inv(rhs) - 1


def bethe_rhs_short(chain, params, l, k):
    """Right side in the reduced form: standard for l != m, free-fermion for l = m."""
    prof = chain.prof
    lv = params.level
    t = lv(l)[k]
    tb = lv(l)[:k] + lv(l)[k + 1:]
    if l == prof.m:
        return (set_product(f, (t,), lv(l - 1), prof.c)
                * inv(set_product(f, (t,), lv(l + 1), prof.c)))
    return (set_product(f, tb, (t,), prof.cg(l)) * inv(set_product(f, (t,), tb, prof.cg(l)))
            * set_product(f, (t,), lv(l - 1), prof.cg(l))
            * inv(set_product(f, lv(l + 1), (t,), prof.cg(l + 1))))


def max_residual(chain, params):
    out = 0
    for l in range(1, chain.prof.N + 1):
        for k in range(len(params.level(l))):
            out = max(out, abs(bethe_residual(chain, params, l, k)))
    return out


def eigenvalue_tau(chain, z, params):
    prof = chain.prof
    out = 0
    for i in range(1, prof.dim + 1):
        term = (chain.lam(i, z) * set_product(f, (z,), params.level(i - 1), prof.cg(i))
                * set_product(f, params.level(i), (z,), prof.cg(i)))
        out = out - term if prof.parity(i) else out + term
    return out


def wanted_terms(chain, z, params):
    """Sum over i of the (p, q) = (i, i) windows of the diagonal actions."""
    out = Ket()
    base = builder.build(chain, params)
    for i in range(1, chain.prof.dim + 1):
        coeff = (upf(chain.prof, i, i, i, i) * Y(chain.prof, params, z, i, i, i, i, {}, {})
                 * Lam(chain, z, i, i, i, i, {}))
        out = out - base * coeff if chain.prof.parity(i) else out + base * coeff
    return out


def check_onshell(chain, params, zs, flavor="forward"):
    """Relative eigenvector residual at each sample plus the worst Bethe residual."""
    vec = builder.build(chain, params, flavor)
    norm = vec.norm2() ** 0.5
    rows = []
    for z in zs:
        diff = chain.transfer(z, vec) - vec * eigenvalue_tau(chain, z, params)
        rel = diff.norm2() ** 0.5 / norm if norm else diff.norm2() ** 0.5
        rows.append({"z": z, "relative_residual": rel})
    return {"samples": rows,
            "max_relative_residual": max((r["relative_residual"] for r in rows), default=0),
            "max_bethe_residual": max_residual(chain, params),
            "norm": norm}


__all__ = ["action_formula", "direct_action", "action_terms", "bethe_residual",
           "bethe_sides", "eigenvalue_tau", "check_onshell", "upf", "D", "Y", "Lam",
           "theta"]
