"""Hand-written partition sums for small algebras.

These spell out the coefficient of every partition line by line for
gl(2|1) and gl(2|2), without going through the general selector or
ordering code, so they can be compared against the general builder.
"""

from .builder import apply_blocks, lambda_product
from .graded import Ket
from .kernel import cauchy, cauchy_hat, f, g, inv, izergin, set_product
from .partitions import enumerate_tables


def _u(*sets):
    out = ()
    for s in sets:
        out = out + tuple(s)
    return out


def _sum(chain, params, flavor, term):
    out = Ket()
    vac = chain.vacuum()
    for tab in enumerate_tables(params, flavor):
        coeff, blocks, diag = term(chain.prof, tab)
        s = coeff * lambda_product(chain, diag)
        if s == 0:
            continue
        out = out + apply_blocks(chain, [b for b in blocks if b[2]], vac) * s
    return out


def gl21_forward(chain, params):
    def term(prof, tab):
        c = prof.c
        t = tab.cell
        t1_11, t1_12 = t(1, (1, 1)), t(1, (1, 2))
        t2_12, t2_22 = t(2, (1, 2)), t(2, (2, 2))
        coeff = (inv(set_product(f, params.level(2), params.level(1), c))
                 * set_product(f, t1_12, t1_11, c) * set_product(g, t2_22, t2_12, c)
                 * cauchy(t2_12, t1_12, c))
        blocks = [(1, 3, t1_12), (1, 2, t1_11), (2, 3, t2_22)]
        return coeff, blocks, [(2, t2_12)]
    return _sum(chain, params, "forward", term)


def gl21_mirror(chain, params):
    def term(prof, tab):
        c = prof.c
        t = tab.cell
        t1_21, t1_11 = t(1, (2, 1)), t(1, (1, 1))
        t2_22, t2_21 = t(2, (2, 2)), t(2, (2, 1))
        coeff = (inv(set_product(f, params.level(2), params.level(1), c))
                 * set_product(f, t1_21, t1_11, c) * set_product(g, t2_22, t2_21, c)
                 * izergin(t2_21, t1_21, c))
        blocks = [(1, 3, t2_21), (2, 3, t2_22), (1, 2, t1_11)]
        return coeff, blocks, [(2, t1_21)]
    return _sum(chain, params, "mirror", term)


def gl22_forward(chain, params):
    def term(prof, tab):
        c = prof.c
        t = tab.cell
        a11, a12, a13 = t(1, (1, 1)), t(1, (1, 2)), t(1, (1, 3))
        b12, b13, b22, b23 = t(2, (1, 2)), t(2, (1, 3)), t(2, (2, 2)), t(2, (2, 3))
        c13, c23, c33 = t(3, (1, 3)), t(3, (2, 3)), t(3, (3, 3))
        t1, t2 = params.level(1), params.level(2)
        coeff = (inv(set_product(f, b12, _u(a11, a12), c))
                 * inv(set_product(f, _u(b13, b22, b23), t1, c))
                 * inv(set_product(f, c13, _u(b12, b13), -c))
                 * inv(set_product(f, _u(c23, c33), t2, -c))
                 * set_product(f, a13, _u(a12, a11), c) * set_product(f, a12, a11, c)
                 * set_product(g, b23, _u(b22, b13, b12), c)
                 * set_product(g, b22, _u(b13, b12), c) * set_product(g, b13, b12, c)
                 * set_product(f, c33, _u(c13, c23), -c) * set_product(f, c23, c13, -c)
                 * cauchy(b12, a12, c) * cauchy(b13, a13, c)
                 * izergin(c13, b13, -c) * izergin(c23, b23, -c))
        blocks = [(1, 4, a13), (1, 3, a12), (1, 2, a11), (2, 4, b23), (2, 3, b22),
                  (3, 4, c33)]
        diag = [(2, b12), (2, b13), (3, c13), (3, c23)]
        return coeff, blocks, diag
    return _sum(chain, params, "forward", term)


def gl22_mirror(chain, params):
    def term(prof, tab):
        c = prof.c
        t = tab.cell
        a31, a21, a11 = t(1, (3, 1)), t(1, (2, 1)), t(1, (1, 1))
        b32, b31, b22, b21 = t(2, (3, 2)), t(2, (3, 1)), t(2, (2, 2)), t(2, (2, 1))
        c33, c32, c31 = t(3, (3, 3)), t(3, (3, 2)), t(3, (3, 1))
        t2 = params.level(2)
        coeff = (inv(set_product(f, t2, _u(a21, a11), c))
                 * inv(set_product(f, _u(b32, b31), a31, c))
                 * inv(set_product(f, c31, _u(b31, b22, b21), -c))
                 * inv(set_product(f, _u(c33, c32), t2, -c))
                 * set_product(f, a31, _u(a21, a11), c) * set_product(f, a21, a11, c)
                 * set_product(g, _u(b31, b22, b21), b32, c)
                 * set_product(g, _u(b22, b21), b31, c) * set_product(g, b21, b22, c)
                 * set_product(f, _u(c33, c32), c31, -c) * set_product(f, c32, c33, -c)
                 * izergin(b21, a21, c) * izergin(b31, a31, c)
                 * cauchy_hat(c31, b31, c) * cauchy_hat(c32, b32, c))
        blocks = [(1, 4, c31), (2, 4, c32), (3, 4, c33), (1, 3, b21), (2, 3, b22),
                  (1, 2, a11)]
        diag = [(2, a31), (2, a21), (3, b32), (3, b31)]
        return coeff, blocks, diag
    return _sum(chain, params, "mirror", term)
