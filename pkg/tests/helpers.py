import random
from fractions import Fraction

from hypothesis import strategies as st

from superbethe.chain import SpinChain
from superbethe.partitions import BetheParams


def rationals(span=50, den=9):
    return st.builds(Fraction, st.integers(-span * den, span * den), st.integers(1, den))


def distinct_rationals(n, span=50, den=9):
    return st.lists(rationals(span, den), min_size=n, max_size=n, unique=True)


def draw_values(seed, n):
    rng = random.Random(seed)
    seen = []
    while len(seen) < n:
        x = Fraction(rng.randint(-500, 500), rng.randint(1, 11))
        if x not in seen:
            seen.append(x)
    return seen


def chain_and_params(prof, L, r, seed):
    vals = draw_values(seed, L + sum(r))
    rng = random.Random(seed + 1)
    twist = [Fraction(rng.randint(1, 7), rng.randint(1, 4)) for _ in range(prof.dim)]
    chain = SpinChain(prof, vals[:L], twist)
    levels, k = [], L
    for n in r:
        levels.append(vals[k:k + n])
        k += n
    return chain, BetheParams(prof, levels)
