from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from goldens import REFERENCE, agree_on_grid
from rcjones.algebra import HSeries, LaurentPoly, binom_rat, qint, t
from rcjones.braid import BraidWord, close, parse_braid
from rcjones.burau import alexander_conway, burau_of_braid, half_diff, rho
from rcjones.errors import DenominatorVanishesToOrder, VanishingAlexander
from rcjones.u1rc import (
    build_param_burau,
    gen_c_table,
    gen_t_polys,
    prefactor,
    substitute_colors,
    t_minus_from_plus,
    u1rc_series,
)

TRIAL = ["1:", "2: 1 1", "2: 1 1 1", "2: -1 -1 -1", "2: 1 1 1 1", "3: 1 -2 1 -2"]


# C-table ------------------------------------------------------------------

def test_c_table_values():
    c = gen_c_table(4)
    assert c[(0, 0)] == 1
    assert all(c.get((k, 0), 0) == 0 for k in range(1, 5))
    assert c[(1, 1)] == mpq(-1, 2) and c[(2, 1)] == mpq(3, 8)


@pytest.mark.parametrize("n", range(5))
def test_c_table_multiply_back(n):
    kmax = 5
    c = gen_c_table(kmax)
    base = HSeries.binomial(mpq(-1, 2), kmax) - HSeries.one(kmax)
    power = HSeries.one(kmax)
    for _ in range(n):
        power = power * base
    fact = 1
    for i in range(2, n + 1):
        fact *= i
    for k in range(kmax + 1):
        assert c.get((k, n), 0) * fact == power.coefficient(k)


# T-polynomials --------------------------------------------------------------

@pytest.mark.parametrize("quoted,generated,fn", REFERENCE)
def test_t_plus_goldens(quoted, generated, fn):
    poly = gen_t_polys(3)[(1,) + generated]
    assert agree_on_grid(poly, fn)


def test_t_zero_zero_is_one():
    table = gen_t_polys(2)
    assert table[(1, 0, 0)].coeffs == {(0, 0, 0): 1}
    assert table[(-1, 0, 0)].coeffs == {(0, 0, 0): 1}


def test_degree_bounds():
    for (sign, j, k), poly in gen_t_polys(4).items():
        d1, d2 = poly.degree_in(0), poly.degree_in(1)
        if sign > 0:
            assert d1 <= k and d2 <= j + k
        else:
            assert d2 <= k and d1 <= j + k
        assert poly.total_degree() <= j + 2 * k


@pytest.mark.parametrize("j,k", [(j, k) for j in range(4) for k in range(4 - j)])
def test_t_minus_relation(j, k):
    table = gen_t_polys(3)
    assert t_minus_from_plus(table, j, k) == table[(-1, j, k)].coeffs


# parametrized Burau ---------------------------------------------------------

def _at_zero(pb):
    zero = (0,) * len(pb.names)
    return [[x.terms.get(zero, LaurentPoly()) for x in row] for row in pb.matrix]


def test_param_burau_reduces_to_rho():
    b = parse_braid("2: 1")
    assert _at_zero(build_param_burau(b, cap=2)) == rho(1, t(1), t(1))
    b = parse_braid("2: -1 -1")
    c = close(b)
    assert _at_zero(build_param_burau(b, c, cap=2)) == burau_of_braid(b, c)


def test_param_burau_plus_entry():
    b = parse_braid("2: 1 1")
    pb = build_param_burau(BraidWord(2, ((1, 1),)), close(b), cap=2)
    entry = pb.matrix[0][0]
    names = pb.names
    e = lambda **kw: tuple(kw.get(n, 0) for n in names)
    one_minus = LaurentPoly.const(1) - t(2, -1)
    # e^{e1+e3} (1 - t2^{-1} + e4)
    assert entry.coefficient(e()) == one_minus
    assert entry.coefficient(e(e4_0=1)) == LaurentPoly.const(1)
    assert entry.coefficient(e(e1_0=1)) == one_minus
    assert entry.coefficient(e(e1_0=1, e3_0=1)) == one_minus
    assert entry.coefficient(e(e3_0=1, e4_0=1)) == LaurentPoly.const(1)


def test_param_burau_empty_word():
    pb = build_param_burau(BraidWord(3), cap=1)
    assert _at_zero(pb) == [[LaurentPoly.const(int(i == j)) for j in range(3)] for i in range(3)]


# the series -----------------------------------------------------------------

def test_unknot_closed_form():
    s = u1rc_series(BraidWord(1), 5)
    for n in range(6):
        assert s.lifted(n) == half_diff("t1").scale(binom_rat(mpq(1, 2), n))


@pytest.mark.parametrize("word", ["2: 1 1", "2: 1 1 1", "3: 1 -2 1 -2", "2: -1 -1"])
def test_engines_agree(word):
    b = parse_braid(word)
    jet = u1rc_series(b, 2, method="jet")
    fock = u1rc_series(b, 2, method="fock")
    for n in range(3):
        assert jet.lifted(n) == fock.lifted(n)


def test_jet_determinant_matches_burau():
    b = parse_braid("3: 1 -2 1 -2")
    s = u1rc_series(b, 1, method="jet")
    assert s.D == alexander_conway(b).det


@pytest.mark.parametrize("word", TRIAL)
def test_structure(word):
    s = u1rc_series(parse_braid(word), 3)
    for n in range(4):
        f = s.coefficient(n)
        assert f.power <= 2 * n + 1
        assert all(d & (d - 1) == 0 for d in s.lifted(n).coefficient_denominators())


@pytest.mark.parametrize("word", TRIAL)
def test_leading_term_times_nabla(word):
    num, den = u1rc_series(parse_braid(word), 0).leading_times_nabla()
    assert num == den


@pytest.mark.parametrize("word", TRIAL)
def test_parity(word):
    assert u1rc_series(parse_braid(word), 3).parity_holds()


def test_vanishing_alexander():
    with pytest.raises(VanishingAlexander):
        u1rc_series(parse_braid("2:"), 2)


def test_prefactor_hopf():
    pre = prefactor(close(parse_braid("2: 1 1")))
    assert pre.q_exp == Fraction(-1, 2)
    assert pre.t_exps == (Fraction(0), Fraction(0))


@settings(max_examples=10)
@given(st.integers(-4, 4).filter(bool))
def test_substitute_unknot_gives_quantum_integer(alpha):
    s = u1rc_series(BraidWord(1), 5)
    got = substitute_colors(s, [alpha])
    assert got.prec == 5
    assert got == HSeries.from_q_poly(qint(alpha), 5)


def test_substitute_hopf_lower_order():
    s = u1rc_series(parse_braid("2: 1 1"), 3)
    assert substitute_colors(s, [1, 1]).low >= -1


def test_substitute_trefoil_color_one():
    s = u1rc_series(parse_braid("2: 1 1 1"), 4)
    got = substitute_colors(s, [1])
    # Jhr(q) alone; the mu-sum is a single term for a knot
    assert got == HSeries.from_q_poly(LaurentPoly.const(1), 4)


def test_substitute_denominator_vanishes_for_three_components():
    s = u1rc_series(parse_braid("3: 1 1 2 2"), 1)
    with pytest.raises(DenominatorVanishesToOrder):
        substitute_colors(s, [2, 2, 2])


def test_json_shape():
    data = u1rc_series(parse_braid("2: 1 1 1"), 2).to_json()
    assert set(data) >= {"L", "D", "orders", "prefactor"}
    assert [o["den_pow"] for o in data["orders"]] == [1, 3, 5]
