from fractions import Fraction

import mpmath
import pytest
from hypothesis import given

from helpers import rationals
from superbethe.scalars import Profile, format_scalar, parse_scalar, to_scalar


def test_parity_examples():
    assert Profile(2, 1).parity(1) == 0
    assert Profile(2, 1).parity(3) == 1
    assert Profile(1, 1).parity(1) == 0


def test_parity_out_of_range():
    with pytest.raises(IndexError):
        Profile(2, 1).parity(4)
    with pytest.raises(IndexError):
        Profile(2, 1).parity(0)


def test_graded_constant():
    assert Profile(2, 1).cg(2) == 1
    assert Profile(2, 1).cg(3) == -1
    assert Profile(1, 2, Fraction(3, 2)).cg(2) == Fraction(-3, 2)


def test_graded_constant_depends_only_on_parity():
    prof = Profile(3, 2, Fraction(5, 7))
    for i in range(1, 6):
        for j in range(1, 6):
            if prof.parity(i) == prof.parity(j):
                assert prof.cg(i) == prof.cg(j)


def test_profile_validation():
    with pytest.raises(ValueError):
        Profile(0, 1)
    with pytest.raises(ValueError):
        Profile(1, 1, 0)
    assert Profile(2, 3).N == 4
    assert Profile(2, 3).mirror() == Profile(3, 2)


def test_floats_rejected():
    with pytest.raises(TypeError):
        to_scalar(0.5)


@given(rationals(10 ** 6, 10 ** 6))
def test_exact_round_trip(x):
    s = format_scalar(x)
    assert parse_scalar(s) == x
    assert "@" not in s


def test_exact_format():
    assert format_scalar(Fraction(-3, 4)) == "-3/4"
    assert format_scalar(5) == "5"


def test_multiprecision_round_trip():
    with mpmath.workdps(50):
        x = mpmath.mpc(mpmath.pi, -mpmath.e)
        s = format_scalar(x)
        assert s.endswith("@50")
    y = parse_scalar(s)
    with mpmath.workdps(50):
        assert abs(y - x) < mpmath.mpf(10) ** -48
