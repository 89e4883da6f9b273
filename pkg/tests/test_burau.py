from fractions import Fraction

import pytest
from hypothesis import given

from rcjones.algebra import LaurentPoly, identity, mat_mul, t
from rcjones.braid import BraidWord, close, parse_braid
from rcjones.burau import (
    alexander_conway,
    burau_of_braid,
    conway_symmetry_holds,
    half_diff,
    reduced_det,
    rho,
    torres_check,
)
from strategies import braids

one, zero = LaurentPoly.const(1), LaurentPoly()
t1, t2 = t(1), t(2)


def test_rho_plus():
    assert rho(1, t1, t2) == [[one - t(2, -1), t(1, -1)], [one, zero]]


def test_rho_minus():
    assert rho(-1, t1, t2) == [[zero, one], [t2, t(1, -1) * t2 * (one - t1)]]


def test_rho_inverse():
    assert mat_mul(rho(1, t1, t2), rho(-1, t2, t1)) == identity(2)


def test_burau_trivial_and_single_letter():
    assert burau_of_braid(BraidWord(1)) == identity(1)
    assert burau_of_braid(parse_braid("2: 1")) == rho(1, t1, t1)
    assert burau_of_braid(parse_braid("2: 1 -1")) == identity(2)


def test_unknot():
    res = alexander_conway(BraidWord(1))
    assert res.L == 1 and res.delta == one
    num, den = res.nabla_fraction()
    assert num == one and den == half_diff("t1")


def test_hopf_nabla_is_one():
    assert alexander_conway(parse_braid("2: 1 1")).nabla == one


def test_split_unknots_vanish():
    res = alexander_conway(parse_braid("2:"))
    assert res.nabla == zero and res.vanishing


def test_trefoil_delta():
    assert alexander_conway(parse_braid("2: 1 1 1")).delta == t1 - 1 + t(1, -1)


def test_t24_nabla():
    # nabla(T(2,4)) = t1^{1/2} t2^{1/2} + t1^{-1/2} t2^{-1/2}
    expected = LaurentPoly.monomial({"t1": Fraction(1, 2), "t2": Fraction(1, 2)}) + \
        LaurentPoly.monomial({"t1": Fraction(-1, 2), "t2": Fraction(-1, 2)})
    assert alexander_conway(parse_braid("2: 1 1 1 1")).nabla == expected


@pytest.mark.parametrize("word", ["2: 1 1", "2: 1 1 1 1", "2:", "3: 1 1 2 2", "3: 1 -2 1 1 2"])
def test_torres(word):
    b = parse_braid(word)
    for i in range(close(b).L):
        assert torres_check(b, i)


@given(braids(max_strands=3, max_len=6))
def test_conway_symmetry(b):
    assert conway_symmetry_holds(alexander_conway(b))


@given(braids(max_strands=3, max_len=6))
def test_knot_delta_at_one(b):
    res = alexander_conway(b)
    if res.L == 1:
        assert res.delta.eval_rat({"t1": 1}) == 1


@given(braids(max_strands=3, max_len=5))
def test_det_consistency_with_minor(b):
    c = close(b)
    m = burau_of_braid(b, c)
    assert reduced_det(m) == alexander_conway(b).det
