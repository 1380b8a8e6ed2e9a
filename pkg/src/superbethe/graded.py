"""Sparse Z2-graded multilinear algebra on (C^{m|n})^{(x)L}.

Basis vectors are tuples of local indices (1-based).  A state maps basis
tuples to scalars and never stores zeros.  Operators on a tensor product
act with Koszul signs: an operator of degree d placed at site k picks up
(-1)^(d * sum of parities to the left of k).
"""

from .scalars import format_scalar, parse_scalar


class _State(dict):
    """Sparse vector: basis tuple -> coefficient."""

    kind = "state"

    def __init__(self, *args, **kw):
        super().__init__(*args, **kw)
        for key in [k for k, v in self.items() if v == 0]:
            del self[key]

    def _new(self, data=()):
        return type(self)(data)

    def add_term(self, key, coeff):
        val = self.get(key, 0) + coeff
        if val == 0:
            self.pop(key, None)
        else:
            self[key] = val

    def __add__(self, other):
        self._check(other)
        out = self._new(self)
        for k, v in other.items():
            out.add_term(k, v)
        return out

    def __sub__(self, other):
        return self + other * (-1)

    def __mul__(self, s):
        if s == 0:
            return self._new()
        return self._new({k: v * s for k, v in self.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * (-1)

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError("cannot combine %s with %s"
                            % (type(self).__name__, type(other).__name__))

    def norm2(self):
        """Sum of squared moduli of the coefficients."""
        return sum(abs(v) ** 2 for v in self.values())

    def max_abs(self):
        return max((abs(v) for v in self.values()), default=0)

    def equals(self, other):
        self._check(other)
        return dict(self) == dict(other)

    def __eq__(self, other):
        return type(other) is type(self) and dict(self) == dict(other)

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def to_records(self):
        return [{"sites": list(k), "coefficient": format_scalar(self[k])}
                for k in sorted(self)]

    @classmethod
    def from_records(cls, records):
        out = cls()
        for rec in records:
            out.add_term(tuple(rec["sites"]), parse_scalar(rec["coefficient"]))
        return out

    def __repr__(self):
        terms = ", ".join("%s: %s" % (k, format_scalar(self[k])) for k in sorted(self))
        return "%s({%s})" % (type(self).__name__, terms)


class Ket(_State):
    kind = "ket"


class Bra(_State):
    kind = "bra"


def pair(bra, ket):
    """Bilinear pairing making each basis vector dual to itself."""
    if len(bra) > len(ket):
        return sum((v * bra[k] for k, v in ket.items() if k in bra), 0)
    return sum((v * ket[k] for k, v in bra.items() if k in ket), 0)


def basis(*sites):
    return Ket({tuple(sites): 1})


def elementary(prof, i, j, value=1):
    """E_ij as a site operator: dict {(row, col): value} with its degree."""
    return SiteOperator(prof, {(i, j): value})


class SiteOperator:
    """Matrix acting on one site, with a definite Z2 degree."""

    def __init__(self, prof, entries, degree=None):
        self.prof = prof
        self.entries = {k: v for k, v in entries.items() if v != 0}
        degs = {(prof.parity(a) + prof.parity(b)) % 2 for a, b in self.entries}
        if degree is None:
            if len(degs) > 1:
                raise ValueError("operator mixes even and odd entries")
            degree = degs.pop() if degs else 0
        elif degs and degs != {degree}:
            raise ValueError("declared degree %d does not match entries" % degree)
        self.degree = degree
        self.cols = {}
        for (a, b), v in self.entries.items():
            self.cols.setdefault(b, []).append((a, v))

    @classmethod
    def identity(cls, prof):
        return cls(prof, {(a, a): 1 for a in range(1, prof.dim + 1)}, degree=0)


def apply_at_site(op, k, psi):
    """Apply a site operator at site k (1-based) with the Koszul sign."""
    prof = op.prof
    out = type(psi)()
    for key, coeff in psi.items():
        col = op.cols.get(key[k - 1])
        if not col:
            continue
        sign = 1
        if op.degree and sum(prof.parity(a) for a in key[:k - 1]) % 2:
            sign = -1
        for a, v in col:
            new = key[:k - 1] + (a,) + key[k:]
            out.add_term(new, sign * v * coeff)
    return out


def swap_sign(prof, key, k, l):
    """Sign of the graded swap of sites k < l (0-based) on a basis tuple."""
    a, b = key[k], key[l]
    pa, pb = prof.parity(a), prof.parity(b)
    mid = sum(prof.parity(x) for x in key[k + 1:l])
    return -1 if (pa * pb + (pa + pb) * mid) % 2 else 1


def apply_P(prof, k, l, psi):
    """Graded permutation sum_ab (-1)^[b] E_ab (x) E_ba on sites k < l (1-based)."""
    out = type(psi)()
    for key, coeff in psi.items():
        new = list(key)
        new[k - 1], new[l - 1] = key[l - 1], key[k - 1]
        out.add_term(tuple(new), swap_sign(prof, key, k - 1, l - 1) * coeff)
    return out


def apply_P_literal(prof, k, l, psi):
    """Same operator, expanded term by term from the elementary matrices."""
    out = type(psi)()
    d = prof.dim
    for a in range(1, d + 1):
        for b in range(1, d + 1):
            s = -1 if prof.parity(b) else 1
            part = apply_at_site(elementary(prof, b, a), l, psi)
            part = apply_at_site(elementary(prof, a, b), k, part)
            out = out + part * s
    return out


def apply_R(prof, k, l, u, v, psi, g):
    """R(u, v) = 1 + g(u, v) P on sites k < l."""
    return psi + apply_P(prof, k, l, psi) * g(u, v, prof.c)


def supertrace(prof, blocks):
    """sum_i (-1)^[i] blocks[i] for a dict or list of diagonal blocks indexed 1..m+n."""
    out = None
    for i in range(1, prof.dim + 1):
        term = blocks[i] if isinstance(blocks, dict) else blocks[i - 1]
        term = -term if prof.parity(i) else term
        out = term if out is None else out + term
    return out


def letter_degree(prof, i, j):
    return (prof.parity(i) + prof.parity(j)) % 2


def psi_on_word(prof, word):
    """Antimorphism on a word of monodromy letters.

    ``word`` is a list of (i, j, u).  Returns (reversed word with
    transposed labels, sign) where each letter T_ij becomes
    (-1)^([i]([j]+1)) T_ji and reversing graded factors costs
    (-1)^([A][B]) per crossed pair.
    """
    sign = 1
    degs = [letter_degree(prof, i, j) for i, j, _ in word]
    odd = 0
    for d in degs:
        if d and odd % 2:
            sign = -sign
        odd += d
    for i, j, _ in word:
        if (prof.parity(i) * (prof.parity(j) + 1)) % 2:
            sign = -sign
    return [(j, i, u) for i, j, u in reversed(word)], sign


def psi_on_blocks(prof, blocks):
    """Antimorphism on a word of blocks (i, j, params).

    Odd blocks are the normalized products; the net sign of an odd block
    of length a is (-1)^(a(a-1)/2) for i < j and (-1)^(a(a+1)/2) for i > j.
    Even blocks are plain products.  Returns (new blocks, sign).
    """
    sign = 1
    odd_seen = 0
    for i, j, params in blocks:
        a = len(params)
        d = letter_degree(prof, i, j) * a % 2
        if d and odd_seen % 2:
            sign = -sign
        odd_seen += d
        if letter_degree(prof, i, j):
            e = a * (a - 1) // 2 if i < j else a * (a + 1) // 2
            if e % 2:
                sign = -sign
        elif (prof.parity(i) * (prof.parity(j) + 1) * a) % 2:
            sign = -sign
    return [(j, i, params) for i, j, params in reversed(blocks)], sign
