"""Indexed partitions of Bethe parameter tables.

Level l of a table is split into cells labelled by pairs (lo, hi) with
lo <= l <= hi.  Every cell of a column (lo, hi) has the same size across
the levels lo..hi.  Forward tables key the cell as (lo, hi); mirror
tables key it as (hi, lo), matching the two index conventions.  In both
cases the ordering of cells within a level is lexicographic on the key.
"""

from itertools import combinations
from math import factorial

from .scalars import to_scalar


class BetheParams:
    """Per-level parameter lists t^1 .. t^N."""

    def __init__(self, prof, levels):
        if len(levels) != prof.N:
            raise ValueError("gl(%d|%d) needs %d levels, got %d"
                             % (prof.m, prof.n, prof.N, len(levels)))
        self.prof = prof
        self.levels = tuple(tuple(to_scalar(x) for x in lv) for lv in levels)
        flat = [x for lv in self.levels for x in lv]
        if len(set(flat)) != len(flat):
            raise ValueError("Bethe parameters must be pairwise distinct")

    @property
    def r(self):
        return tuple(len(lv) for lv in self.levels)

    def level(self, l):
        """t^l with the convention t^0 = t^{N+1} = empty."""
        if 1 <= l <= len(self.levels):
            return self.levels[l - 1]
        return ()

    def size(self):
        return sum(self.r)

    def replace(self, l, values):
        lv = list(self.levels)
        lv[l - 1] = tuple(values)
        return BetheParams(self.prof, lv)

    def __repr__(self):
        return "BetheParams(%r)" % (self.levels,)


def column_pairs(N):
    return [(lo, hi) for lo in range(1, N + 1) for hi in range(lo, N + 1)]


def enumerate_cardinalities(r):
    """All {(lo, hi): nu} with sum over lo <= l <= hi of nu = r_l, lexicographic."""
    N = len(r)
    pairs = column_pairs(N)

    def rec(idx, rem):
        if idx == len(pairs):
            if all(x == 0 for x in rem):
                yield {}
            return
        lo, hi = pairs[idx]
        cap = min(rem[l - 1] for l in range(lo, hi + 1))
        # columns starting at lo are the last chance to fill level lo
        last_for_lo = idx + 1 == len(pairs) or pairs[idx + 1][0] != lo
        start = rem[lo - 1] if last_for_lo else 0
        if start > cap:
            return
        for nu in range(start, cap + 1):
            new = list(rem)
            for l in range(lo, hi + 1):
                new[l - 1] -= nu
            for rest in rec(idx + 1, new):
                out = {(lo, hi): nu} if nu else {}
                out.update(rest)
                yield out

    yield from rec(0, list(r))


def _split(items, sizes):
    """Ordered set partitions of ``items`` into blocks of the given sizes."""
    if not sizes:
        if not items:
            yield ()
        return
    first, rest = sizes[0], sizes[1:]
    for pick in combinations(range(len(items)), first):
        chosen = tuple(items[i] for i in pick)
        left = tuple(x for i, x in enumerate(items) if i not in pick)
        for tail in _split(left, rest):
            yield (chosen,) + tail


class PartitionTable:
    """One concrete assignment of parameters to cells."""

    def __init__(self, flavor, N, cells, nu):
        self.flavor = flavor
        self.N = N
        self.cells = cells  # level -> {key: tuple}
        self.nu = nu

    def cell(self, l, key):
        return self.cells.get(l, {}).get(key, ())

    def keys(self, l):
        return sorted(self.cells.get(l, {}))

    def column(self, lo, hi):
        key = (lo, hi) if self.flavor == "forward" else (hi, lo)
        return {l: self.cell(l, key) for l in range(lo, hi + 1)}

    def diagram(self):
        """Text layout: one row per level, one column per index pair."""
        pairs = column_pairs(self.N)
        rows = []
        for l in range(1, self.N + 1):
            parts = []
            for lo, hi in pairs:
                key = (lo, hi) if self.flavor == "forward" else (hi, lo)
                if lo <= l <= hi:
                    parts.append("%d,%d:{%s}" % (key[0], key[1], ",".join(
                        str(x) for x in self.cell(l, key))))
                else:
                    parts.append(" " * 4)
            rows.append("t%d | " % l + "  ".join(parts))
        return "\n".join(rows)


def enumerate_tables(params, flavor="forward"):
    """Stream every partition table of the given flavor."""
    if flavor not in ("forward", "mirror"):
        raise ValueError("flavor must be 'forward' or 'mirror'")
    N = len(params.levels)
    for nu in enumerate_cardinalities(params.r):
        per_level = []
        for l in range(1, N + 1):
            keys = [(lo, hi) for (lo, hi) in sorted(nu) if lo <= l <= hi]
            per_level.append(keys)
        yield from _assign(params, flavor, nu, per_level, 1, {})


def _assign(params, flavor, nu, per_level, l, acc):
    N = len(params.levels)
    if l > N:
        yield PartitionTable(flavor, N, dict(acc), nu)
        return
    keys = per_level[l - 1]
    sizes = [nu[k] for k in keys]
    for blocks in _split(params.level(l), sizes):
        cells = {}
        for (lo, hi), blk in zip(keys, blocks):
            key = (lo, hi) if flavor == "forward" else (hi, lo)
            cells[key] = blk
        acc[l] = cells
        yield from _assign(params, flavor, nu, per_level, l + 1, acc)
    acc.pop(l, None)


def count_tables(r):
    """Number of partition tables: sum over nu of prod_l multinomials."""
    total = 0
    N = len(r)
    for nu in enumerate_cardinalities(r):
        prod = 1
        for l in range(1, N + 1):
            prod *= factorial(r[l - 1])
            for (lo, hi), k in nu.items():
                if lo <= l <= hi:
                    prod //= factorial(k)
        total += prod
    return total


def precedes(a, b, strict=True):
    """Cell order shared by both flavors: lexicographic comparison of keys.

    Forward keys (q, q'): (q, q') < (p, p') iff q < p, or q = p and q' < p'.
    Mirror keys (q', q): (p', p) > (q', q) iff p' > q', or p' = q' and p > q.
    """
    return a < b if strict else a <= b
