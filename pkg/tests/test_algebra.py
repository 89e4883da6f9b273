from fractions import Fraction

import mpmath
import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from rcjones.algebra import (
    DenPowerFrac,
    EpsJet,
    HSeries,
    LaurentPoly,
    det_bareiss,
    eval_complex,
    interpolate_tensor,
    jet_exp,
    jet_mul,
    poly_arith,
    q,
    qint,
    series_invert,
    subst_t_to_qpow,
    t,
)
from rcjones.errors import AllCoefficientsZero, MissingAssignment, NonzeroConstantTerm

half = Fraction(1, 2)


def sqrt_t(k=1):
    return t(1, Fraction(k, 2))


# strategies -------------------------------------------------------------

coeffs = st.integers(-4, 4)
monos = st.tuples(st.integers(-3, 3), st.integers(-2, 2), st.integers(-4, 4))


@st.composite
def polys(draw):
    terms = draw(st.lists(st.tuples(monos, coeffs), max_size=4))
    p = LaurentPoly()
    for (a, b, c), k in terms:
        p = p + LaurentPoly.monomial({"t1": Fraction(a, 2), "t2": Fraction(b, 2), "q": Fraction(c, 4)}, k)
    return p


@st.composite
def unit_series(draw):
    c0 = draw(st.integers(1, 5)) * draw(st.sampled_from([1, -1]))
    rest = draw(st.lists(st.integers(-5, 5), min_size=1, max_size=5))
    return HSeries([mpq(c0)] + [mpq(x) for x in rest])


# LaurentPoly ------------------------------------------------------------

def test_difference_of_squares():
    a = sqrt_t(1) - sqrt_t(-1)
    b = sqrt_t(1) + sqrt_t(-1)
    assert poly_arith(a, b, "mul") == t(1) - t(1, -1)


def test_additive_inverse_and_identity():
    p = t(1, 2) - 3 * t(2) + q(half)
    assert poly_arith(p, poly_arith(p, p, "neg"), "add") == LaurentPoly()
    assert LaurentPoly.const(1) * p == p


def test_exact_division():
    a = t(1) - 1
    b = t(1, 2) + t(1) + 1
    assert (a * b).divide_exact(b) == a


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a


# substitution -----------------------------------------------------------

def test_subst_half_power():
    assert subst_t_to_qpow(sqrt_t(), [3]) == q(Fraction(3, 2))


def test_subst_hopf_nabla_is_one():
    assert subst_t_to_qpow(LaurentPoly.const(1), [2, 5]) == LaurentPoly.const(1)


def test_subst_product_minus_one():
    assert subst_t_to_qpow(t(1) * t(2) - 1, [1, 1]) == q(2) - 1


@given(polys(), polys(), st.lists(st.integers(-3, 3).filter(bool), min_size=2, max_size=2))
def test_subst_is_homomorphism(a, b, alphas):
    assert subst_t_to_qpow(a * b, alphas) == subst_t_to_qpow(a, alphas) * subst_t_to_qpow(b, alphas)


# numeric evaluation -----------------------------------------------------

def test_eval_complex_quantum_two():
    with mpmath.workdps(60):
        root = mpmath.exp(2j * mpmath.pi / 5 / 4)
        val = eval_complex(qint(2), {"q": root})
        assert abs(val - 2 * mpmath.cos(mpmath.pi / 5)) < mpmath.mpf(10) ** -45
    assert abs(complex(val).real - 1.6180339887) < 1e-10


def test_eval_trivial_values():
    assert eval_complex(q() - 1, {"q": 1}) == 0
    assert eval_complex(sqrt_t(), {"t1": 1}) == 1


def test_eval_missing_assignment():
    with pytest.raises(MissingAssignment):
        eval_complex(q() + t(1), {"q": 1})


# HSeries ----------------------------------------------------------------

def test_geometric_series():
    s = HSeries([mpq(1), mpq(-1), mpq(0), mpq(0)])
    assert series_invert(s).coeffs == [1, 1, 1, 1]


def test_monomial_inverse_has_negative_order():
    inv = series_invert(HSeries([mpq(0), mpq(1), mpq(0)]))
    assert inv.low == -1 and inv.coefficient(-1) == 1


def test_sqrt_binomial_series():
    s = HSeries.binomial(mpq(1, 2), 2)
    assert s.coeffs == [1, mpq(1, 2), mpq(-1, 8)]
    inv = s.invert()
    assert inv.coeffs == [1, mpq(-1, 2), mpq(3, 8)]
    assert inv.coeffs == HSeries.binomial(mpq(-1, 2), 2).coeffs


def test_invert_zero_series():
    with pytest.raises(AllCoefficientsZero):
        HSeries([mpq(0), mpq(0)]).invert()


@given(unit_series())
def test_invert_multiplies_back(s):
    prod = s * s.invert()
    assert prod.coeffs[0] == 1 and all(c == 0 for c in prod.coeffs[1:])


def test_from_q_poly_quantum_integer():
    # [3] = 3 + 2h + O(h^2)... check against the product q^{-1}(1 + q + q^2)
    s = HSeries.from_q_poly(qint(3), 3)
    direct = HSeries.from_q_poly(q(-1) * (1 + q() + q(2)), 3)
    assert s == direct and s.coefficient(0) == 3


# EpsJet -----------------------------------------------------------------

NAMES = ("e1", "e2")


def var(name, cap):
    return EpsJet.variable(NAMES, cap, name)


def test_jet_exp_taylor():
    e = jet_exp(var("e1", 2))
    assert e.coefficient((0, 0)) == LaurentPoly.const(1)
    assert e.coefficient((1, 0)) == LaurentPoly.const(1)
    assert e.coefficient((2, 0)) == LaurentPoly.const(mpq(1, 2))
    assert len(e.terms) == 3


def test_jet_truncation():
    assert not jet_mul(var("e1", 1), var("e2", 1)).terms


def test_jet_exp_homomorphism():
    a, b = var("e1", 2), var("e2", 2)
    assert jet_exp(a + b).terms == jet_mul(jet_exp(a), jet_exp(b)).terms


def test_jet_exp_needs_zero_constant():
    with pytest.raises(NonzeroConstantTerm):
        jet_exp(EpsJet.constant(NAMES, 2, LaurentPoly.const(1)))


# DenPowerFrac -----------------------------------------------------------

@given(polys(), st.integers(0, 3), st.integers(0, 3))
def test_normalize_idempotent_and_value_preserving(p, k, power):
    d = t(1) - 1 + t(2)
    f = DenPowerFrac(p * d ** k, d, power)
    n1 = f.normalize()
    assert n1.same_value(f)
    n2 = n1.normalize()
    assert n2.num == n1.num and n2.power == n1.power


# determinants and interpolation -----------------------------------------

def test_det_bareiss_two_by_two():
    m = [[t(1), LaurentPoly.const(1)], [LaurentPoly.const(2), t(1, -1)]]
    assert det_bareiss(m) == LaurentPoly.const(-1)


def test_interpolate_tensor_recovers_polynomial():
    grid = [list(range(4)), list(range(3))]
    vals = {(x, y): mpq(3 * x ** 3 - x * y + 2 * y ** 2 - 1) for x in grid[0] for y in grid[1]}
    poly = interpolate_tensor(grid, vals)
    assert poly == {(3, 0): 3, (1, 1): -1, (0, 2): 2, (0, 0): -1}
