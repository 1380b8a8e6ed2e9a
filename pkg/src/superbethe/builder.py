"""Off-shell Bethe vectors from the explicit partition sums.

A pre-Bethe vector is a sum over partition tables of a scalar times a word
of monodromy blocks.  A block (i, j, params) stands for the normalized
product of odd entries when [i] + [j] is odd, and for the plain product
T_ij(w_1)...T_ij(w_d) otherwise.  Diagonal blocks sit at the right end of
each word; on the vacuum they reduce to products of lambda_i.
"""

from itertools import combinations

from . import kernel
from .graded import Bra, Ket, letter_degree, psi_on_blocks
from .kernel import cauchy, cauchy_hat, f, g, h, inv, izergin, set_product
from .partitions import enumerate_tables


def odd_rank(lo, hi):
    """Order of the level-m cells inside the g product: by hi, then by lo reversed.

    A pair of level-m cells contributes g(t_a, t_b) with a ranked before b.
    Both partition sums need this single rule; the lexicographic cell order
    gives the wrong sign on pairs sharing lo (forward) or hi (mirror).
    """
    return (hi, -lo)


class Term:
    """One partition: scalar coefficient, creation blocks and diagonal blocks."""

    def __init__(self, coeff, blocks, diag, table=None):
        self.coeff = coeff
        self.blocks = blocks
        self.diag = diag
        self.table = table

    def word(self):
        return list(self.blocks) + [(l, l, params) for l, params in self.diag]


def block_letters(prof, blocks):
    """Expand blocks into single letters plus the normalization scalar."""
    letters = []
    scale = 1
    for i, j, params in blocks:
        if letter_degree(prof, i, j) and len(params) > 1:
            scale = scale * inv(kernel.delta(h, params, prof.c, primed=i > j))
        letters.extend((i, j, w) for w in params)
    return letters, scale


def apply_blocks(chain, blocks, psi):
    letters, scale = block_letters(chain.prof, blocks)
    if not letters:
        return psi * scale
    return chain.apply_word(letters, psi) * scale


def bra_blocks(chain, phi, blocks):
    letters, scale = block_letters(chain.prof, blocks)
    if not letters:
        return phi * scale
    return chain.bra_word(phi, letters) * scale


def lambda_product(chain, diag):
    out = 1
    for l, params in diag:
        for w in params:
            out = out * chain.lam(l, w)
    return out


def _inter_level(prof, tab):
    """Inverse f between neighbouring levels: cell of level l not after cell of level l+1."""
    out = 1
    for l in range(1, prof.N):
        c = prof.cg(l + 1)
        for lo in tab.keys(l):
            for hi in tab.keys(l + 1):
                if lo <= hi:
                    out = out * inv(set_product(f, tab.cell(l + 1, hi), tab.cell(l, lo), c))
    return out


def selector(prof, q, qp, k):
    """Kernel for the neighbouring pair (t^k, t^{k-1}) of forward column (q, q').

    'K0' for k <= q' <= m-1, 'C' for k <= m <= q', 'K1' for k >= m+1.
    """
    m = prof.m
    if not q + 1 <= k <= qp:
        raise ValueError("level %d outside column (%d, %d)" % (k, q, qp))
    if k >= m + 1:
        return "K1"
    return "K0" if qp <= m - 1 else "C"


def selector_hat(prof, qp, q, l):
    """Kernel for the pair (t^{l+1}, t^l) of mirror column (q', q).

    'K0' for l <= m-1, 'Chat' for l >= m with q <= m, 'K1' for q >= m+1.
    """
    m = prof.m
    if not q <= l <= qp - 1:
        raise ValueError("level %d outside column (%d, %d)" % (l, qp, q))
    if l <= m - 1:
        return "K0"
    return "Chat" if q <= m else "K1"


def _kernel_value(prof, kind, xs, ys):
    c = prof.c
    if kind == "K0":
        return izergin(xs, ys, c)
    if kind == "K1":
        return izergin(xs, ys, -c)
    if kind == "C":
        return cauchy(xs, ys, c)
    if kind == "Chat":
        return cauchy_hat(xs, ys, c)
    raise ValueError(kind)


def _odd_pair(prof, ka, xa, kb, xb):
    """g product of two level-m cells with (lo, hi) labels ka, kb."""
    if odd_rank(*ka) < odd_rank(*kb):
        return set_product(g, xa, xb, prof.c)
    return set_product(g, xb, xa, prof.c)


def forward_term(prof, tab):
    m, N = prof.m, prof.N
    coeff = _inter_level(prof, tab)
    for l in range(1, N + 1):
        keys = tab.keys(l)
        for a in range(len(keys)):
            for b in range(a + 1, len(keys)):
                early, late = tab.cell(l, keys[a]), tab.cell(l, keys[b])
                if l == m:
                    coeff = coeff * _odd_pair(prof, keys[a], early, keys[b], late)
                else:
                    coeff = coeff * set_product(f, late, early, prof.cg(l))
    for q in range(1, N + 1):
        for qp in range(q, N + 1):
            for k in range(q + 1, qp + 1):
                xs, ys = tab.cell(k, (q, qp)), tab.cell(k - 1, (q, qp))
                if xs or ys:
                    coeff = coeff * _kernel_value(prof, selector(prof, q, qp, k), xs, ys)
    blocks = []
    for q in range(1, N + 1):
        for qp in range(N + 1, q, -1):
            params = tab.cell(q, (q, qp - 1))
            if params:
                blocks.append((q, qp, params))
    diag = []
    for l in range(1, N + 1):
        for key in tab.keys(l):
            if key[0] < l and tab.cell(l, key):
                diag.append((l, tab.cell(l, key)))
    return Term(coeff, blocks, diag, tab)


def mirror_term(prof, tab):
    m, N = prof.m, prof.N
    coeff = _inter_level(prof, tab)
    for l in range(1, N + 1):
        keys = tab.keys(l)
        for a in range(len(keys)):
            for b in range(a + 1, len(keys)):
                early, late = tab.cell(l, keys[a]), tab.cell(l, keys[b])
                if l == m:
                    coeff = coeff * _odd_pair(prof, keys[a][::-1], early, keys[b][::-1], late)
                else:
                    coeff = coeff * set_product(f, late, early, prof.cg(l + 1))
    for qp in range(1, N + 1):
        for q in range(1, qp + 1):
            for l in range(q, qp):
                xs, ys = tab.cell(l + 1, (qp, q)), tab.cell(l, (qp, q))
                if xs or ys:
                    coeff = coeff * _kernel_value(prof, selector_hat(prof, qp, q, l), xs, ys)
    blocks = []
    for qp in range(N, 0, -1):
        for q in range(1, qp + 1):
            params = tab.cell(qp, (qp, q))
            if params:
                blocks.append((q, qp + 1, params))
    diag = []
    for l in range(1, N + 1):
        for key in tab.keys(l):
            if key[0] > l and tab.cell(l, key):
                diag.append((l + 1, tab.cell(l, key)))
    return Term(coeff, blocks, diag, tab)


def pre_bethe_terms(params, flavor="forward"):
    """Stream the (coefficient, word) terms of the pre-Bethe vector."""
    prof = params.prof
    make = forward_term if flavor == "forward" else mirror_term
    for tab in enumerate_tables(params, flavor):
        yield make(prof, tab)


def _check(chain, params):
    if chain.prof != params.prof:
        raise ValueError("chain profile %r does not match parameters %r"
                         % (chain.prof, params.prof))


def build(chain, params, flavor="forward"):
    """Bethe vector: sum over tables of the word applied to the vacuum."""
    _check(chain, params)
    vac = chain.vacuum()
    out = Ket()
    for term in pre_bethe_terms(params, flavor):
        if term.coeff == 0:
            continue
        s = term.coeff * lambda_product(chain, term.diag)
        if s == 0:
            continue
        out = out + apply_blocks(chain, term.blocks, vac) * s
    return out


def build_hat(chain, params):
    return build(chain, params, "mirror")


def build_dual(chain, params, flavor="forward"):
    """Dual vector: the antimorphism applied to each word, acting on the covacuum."""
    _check(chain, params)
    prof = chain.prof
    covac = chain.covacuum()
    out = Bra()
    for term in pre_bethe_terms(params, flavor):
        blocks, sign = psi_on_blocks(prof, term.word())
        s = term.coeff * sign
        if s == 0:
            continue
        out = out + bra_blocks(chain, covac, blocks) * s
    return out


def dual_block_word(prof, term):
    return psi_on_blocks(prof, term.word())


def _two_split(items, k):
    for pick in combinations(range(len(items)), k):
        first = tuple(items[i] for i in pick)
        second = tuple(x for i, x in enumerate(items) if i not in pick)
        yield first, second


def gl21_terms(us, vs, c=1):
    """Partitions u -> {I, II}, v -> {I, II} with #u_I = #v_I."""
    for p in range(0, min(len(us), len(vs)) + 1):
        for uI, uII in _two_split(us, p):
            for vI, vII in _two_split(vs, p):
                yield uI, uII, vI, vII


def fast_path_gl21(chain, us, vs, which="B"):
    """The two-set partition sums for gl(2|1), built directly."""
    prof = chain.prof
    if (prof.m, prof.n) != (2, 1):
        raise ValueError("the two-set formulas are specific to gl(2|1)")
    c = prof.c
    us, vs = tuple(us), tuple(vs)
    pref = inv(set_product(f, vs, us, c))
    b = len(vs)
    dual = which in ("C", "Chat")
    out = Bra() if dual else Ket()
    start = chain.covacuum() if dual else chain.vacuum()
    if dual and (b * (b - 1) // 2) % 2:
        pref = -pref
    for uI, uII, vI, vII in gl21_terms(us, vs, c):
        if which in ("B", "C"):
            s = (pref * set_product(g, vI, uI, c) * set_product(f, uI, uII, c)
                 * set_product(g, vII, vI, c) * set_product(h, uI, uI, c))
            diag = [(2, vI)]
            blocks = [(1, 3, uI), (1, 2, uII), (2, 3, vII)]
        else:
            s = (pref * izergin(vI, uI, c) * set_product(f, uI, uII, c)
                 * set_product(g, vII, vI, c))
            diag = [(2, uI)]
            blocks = [(1, 3, vI), (2, 3, vII), (1, 2, uII)]
        blocks = [bl for bl in blocks if bl[2]]
        s = s * lambda_product(chain, diag)
        if s == 0:
            continue
        if dual:
            rev = [(j, i, p) for i, j, p in reversed(blocks)]
            out = out + bra_blocks(chain, start, rev) * s
        else:
            out = out + apply_blocks(chain, blocks, start) * s
    return out


def morphism_letter(prof, i, j):
    """Image of T_ij under gl(m|n) -> gl(n|m): (sign, i', j') with T~_{j'i'}."""
    k = prof.dim + 1
    e = prof.parity(i) * prof.parity(j) + prof.parity(j) + 1
    return (-1 if e % 2 else 1), k - j, k - i


def morphism_image(chain_mirror, prof, term):
    """Apply the morphism to one pre-Bethe word and act on the mirror chain's vacuum."""
    letters, scale = block_letters(prof, term.word())
    sign = 1
    mapped = []
    for i, j, w in letters:
        s, a, b = morphism_letter(prof, i, j)
        sign *= s
        mapped.append((a, b, w))
    vac = chain_mirror.vacuum()
    return chain_mirror.apply_word(mapped, vac) * (term.coeff * scale * sign)


def mirror_relabel(prof, tab):
    """Cell t^l_{i,j} -> s^{N+1-l}_{N+1-i, N+1-j} as a mirror table of gl(n|m)."""
    from .partitions import PartitionTable
    N = prof.N
    cells = {}
    for l, row in tab.cells.items():
        for (i, j), params in row.items():
            cells.setdefault(N + 1 - l, {})[(N + 1 - i, N + 1 - j)] = params
    nu = {(N + 1 - j, N + 1 - i): k for (i, j), k in tab.nu.items()}
    return PartitionTable("mirror", N, cells, nu)
