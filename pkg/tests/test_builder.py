import random
from fractions import Fraction

import pytest

from helpers import chain_and_params
from superbethe import builder, checks, worked
from superbethe.chain import SpinChain
from superbethe.graded import Bra, Ket
from superbethe.kernel import g, h, inv, f
from superbethe.partitions import BetheParams
from superbethe.scalars import Profile

GL21 = Profile(2, 1)


def test_empty_parameters_give_vacuum():
    for prof in (GL21, Profile(2, 2)):
        chain, params = chain_and_params(prof, 2, [0] * prof.N, 1)
        assert builder.build(chain, params) == chain.vacuum()
        assert builder.build_hat(chain, params) == chain.vacuum()
        assert builder.build_dual(chain, params) == chain.covacuum()
        assert builder.fast_path_gl21(chain, (), ()) == chain.vacuum() if prof == GL21 else True


def test_single_even_root():
    chain, params = chain_and_params(GL21, 2, [1, 0], 2)
    u = params.level(1)[0]
    assert builder.build(chain, params) == chain.apply(1, 2, u, chain.vacuum())


def test_one_root_per_level_hand_expansion():
    chain, params = chain_and_params(GL21, 3, [1, 1], 3)
    (u,), (v,) = params.levels
    vac = chain.vacuum()
    expected = (chain.apply(1, 2, u, chain.apply(2, 3, v, vac))
                + chain.apply(1, 3, u, vac) * (g(v, u, 1) * chain.lam(2, v))) * inv(f(v, u, 1))
    assert builder.build(chain, params) == expected
    assert len(expected) == 3


def test_odd_product_normalization():
    chain = SpinChain(GL21, [Fraction(1, 3), Fraction(5)])
    w1, w2 = Fraction(7, 2), Fraction(-2, 9)
    vac = chain.vacuum()
    one = builder.apply_blocks(chain, [(1, 3, (w1, w2))], vac)
    two = builder.apply_blocks(chain, [(1, 3, (w2, w1))], vac)
    direct = chain.apply(1, 3, w1, chain.apply(1, 3, w2, vac)) * inv(h(w2, w1, 1))
    assert one == two == direct
    assert builder.apply_blocks(chain, [(1, 3, (w1,))], vac) == chain.apply(1, 3, w1, vac)


@pytest.mark.parametrize("prof, L, r, level", [(GL21, 3, (2, 1), 1), (GL21, 3, (2, 2), 2),
                                               (Profile(2, 2), 2, (2, 2, 1), 2)])
def test_symmetric_within_a_level(prof, L, r, level):
    chain, params = chain_and_params(prof, L, r, 4)
    base = builder.build(chain, params)
    assert base != Ket()
    swapped = params.replace(level, tuple(reversed(params.level(level))))
    assert builder.build(chain, swapped) == base


@pytest.mark.parametrize("a, b", [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (1, 2)])
def test_gl21_fast_paths(a, b):
    chain, params = chain_and_params(GL21, 3, (a, b), 5 + a + 3 * b)
    us, vs = params.levels
    assert builder.build(chain, params) == builder.fast_path_gl21(chain, us, vs, "B")
    assert builder.build_hat(chain, params) == builder.fast_path_gl21(chain, us, vs, "Bhat")
    assert builder.build_dual(chain, params) == builder.fast_path_gl21(chain, us, vs, "C")
    assert builder.build_dual(chain, params, "mirror") == \
        builder.fast_path_gl21(chain, us, vs, "Chat")


def test_fast_path_profile_check():
    chain, params = chain_and_params(Profile(1, 2), 1, (1, 0), 6)
    with pytest.raises(ValueError):
        builder.fast_path_gl21(chain, (), ())


def test_dual_single_odd_root():
    chain = SpinChain(GL21, [Fraction(1, 3), Fraction(5)], [2, 3, 7])
    v = Fraction(9, 4)
    params = BetheParams(GL21, [[], [v]])
    expected = chain.apply_bra(chain.covacuum(), 3, 2, v) * -1
    assert builder.build_dual(chain, params) == expected


@pytest.mark.parametrize("r", [(1, 1, 1), (1, 1, 0), (2, 1, 1), (1, 1, 2)])
def test_equivalence_gl22(r):
    chain, params = chain_and_params(Profile(2, 2), 3, r, 7)
    assert builder.build(chain, params) == builder.build_hat(chain, params)


@pytest.mark.parametrize("fn, flavor", [(worked.gl22_forward, "forward"),
                                        (worked.gl22_mirror, "mirror")])
def test_gl22_worked_formulas(fn, flavor):
    chain, params = chain_and_params(Profile(2, 2), 3, (1, 1, 1), 8)
    vec = builder.build(chain, params, flavor)
    assert vec != Ket()
    assert fn(chain, params) == vec


def test_morphism_and_coproduct_small():
    assert all(r["passed"] for r in checks.check_morphism(cases=(((2, 1), (1, 1)),)))
    assert all(r["passed"] for r in checks.check_coproduct(splits=((1, 1),)))


def test_profile_mismatch():
    chain, _ = chain_and_params(GL21, 1, (0, 0), 9)
    with pytest.raises(ValueError):
        builder.build(chain, BetheParams(Profile(1, 2), [[], []]))
