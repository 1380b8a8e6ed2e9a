import itertools
from fractions import Fraction
from math import factorial

import pytest

from helpers import chain_and_params, draw_values
from superbethe import action, builder, checks
from superbethe.chain import SpinChain
from superbethe.graded import Ket
from superbethe.kernel import f
from superbethe.partitions import BetheParams
from superbethe.scalars import Profile

GL21 = Profile(2, 1)


def test_diagonal_on_vacuum():
    chain, params = chain_and_params(GL21, 2, (0, 0), 1)
    z = Fraction(-17, 3)
    assert action.action_formula(chain, 1, 1, z, params) == chain.vacuum() * chain.lam(1, z)


def test_corner_entry_on_vacuum():
    chain, params = chain_and_params(GL21, 2, (0, 0), 2)
    z = Fraction(-17, 3)
    out = action.action_formula(chain, 1, 3, z, params)
    assert out != Ket()
    assert out == action.direct_action(chain, 1, 3, z, params)


def test_wanted_and_unwanted_terms():
    chain = SpinChain(GL21, [Fraction(1, 3), Fraction(2)], [2, -3, Fraction(5, 2)])
    u, z = Fraction(7, 2), Fraction(-5, 4)
    params = BetheParams(GL21, [[u], []])
    terms = list(action.action_terms(chain, 2, 2, z, params))
    assert len(terms) == 2
    shifted = {t.levels: c for c, t in terms}
    assert shifted[((u,), ())] == chain.lam(2, z) * f(z, u, 1)
    assert ((z,), ()) in shifted
    assert action.action_formula(chain, 2, 2, z, params) == \
        action.direct_action(chain, 2, 2, z, params)


@pytest.mark.parametrize("prof, L, r", [(Profile(1, 1), 3, (2,)), (GL21, 2, (1, 1)),
                                        (Profile(1, 2), 2, (1, 1)), (GL21, 3, (2, 1))])
def test_action_matches_direct(prof, L, r):
    chain, params = chain_and_params(prof, L, r, 11)
    z = draw_values(99, 1)[0]
    for i in range(1, prof.dim + 1):
        for j in range(i, prof.dim + 1):
            assert action.action_formula(chain, i, j, z, params) == \
                action.direct_action(chain, i, j, z, params)


def test_action_mirror_flavor():
    chain, params = chain_and_params(GL21, 2, (1, 1), 12)
    z = Fraction(31, 7)
    assert action.action_formula(chain, 1, 2, z, params, "mirror") == \
        action.direct_action(chain, 1, 2, z, params)


def test_lower_entries():
    chain, params = chain_and_params(GL21, 2, (0, 0), 3)
    assert action.direct_action(chain, 3, 1, Fraction(5), params) == Ket()
    with pytest.raises(IndexError):
        list(action.action_terms(chain, 3, 1, Fraction(5), params))


def test_distinguished_choice_equals_full_symmetrization():
    chain, params = chain_and_params(GL21, 3, (3, 1), 13)
    z = draw_values(77, 1)[0]
    prof = chain.prof
    i, j = 2, 2
    p, q = 1, 2
    lv = params.level(1)
    sym = Ket()
    for perm in itertools.permutations(lv):
        picked, rest = {1: perm[-1]}, {1: perm[:-1]}
        coeff = (action.upf(prof, p, i, j, q)
                 * action.D(prof, params, p, i, j, q, picked, rest)
                 * action.Y(prof, params, z, p, i, j, q, picked, rest)
                 * action.Lam(chain, z, p, i, j, q, picked))
        new = BetheParams(prof, [[z] + list(perm[:-1]), params.level(2)])
        sym = sym + builder.build(chain, new) * coeff
    sym = sym * Fraction(1, factorial(len(lv) - 1))
    fast = Ket()
    for coeff, shifted in action.action_terms(chain, i, j, z, params):
        if shifted.levels[0][0] == z and shifted.levels[1] == params.level(2):
            fast = fast + builder.build(chain, BetheParams(prof, shifted.levels)) * coeff
    assert fast == sym != Ket()


def test_phases_and_normalizations():
    assert all(r["passed"] for r in checks.check_signs())


def test_eigenvalue_empty():
    chain = SpinChain(GL21, [Fraction(1, 3)], [2, 3, 5])
    z = Fraction(9, 2)
    params = BetheParams(GL21, [[], []])
    assert action.eigenvalue_tau(chain, z, params) == \
        chain.lam(1, z) + chain.lam(2, z) - chain.lam(3, z)


def test_eigenvalue_gl11():
    prof = Profile(1, 1)
    chain = SpinChain(prof, [Fraction(1, 3)], [2, 3])
    z, t = Fraction(9, 2), Fraction(-1, 5)
    params = BetheParams(prof, [[t]])
    assert action.eigenvalue_tau(chain, z, params) == \
        chain.lam(1, z) * f(t, z, 1) - chain.lam(2, z) * f(z, t, -1)


@pytest.mark.parametrize("prof, r", [(GL21, (2, 1)), (Profile(3, 2), (2, 2, 1, 1)),
                                     (Profile(1, 2), (2, 1))])
def test_reduced_bethe_equations(prof, r):
    chain, params = chain_and_params(prof, 2, r, 14)
    for l in range(1, prof.N + 1):
        for k in range(r[l - 1]):
            _, rhs = action.bethe_sides(chain, params, l, k)
            assert rhs == action.bethe_rhs_short(chain, params, l, k)


def test_wanted_terms_sum():
    chain, params = chain_and_params(GL21, 3, (2, 1), 15)
    z = Fraction(-41, 6)
    assert action.wanted_terms(chain, z, params) == \
        builder.build(chain, params) * action.eigenvalue_tau(chain, z, params)
