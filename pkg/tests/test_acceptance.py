"""End-to-end acceptance checks, one test per criterion.

Each test prints a PASS/FAIL line (with timing) in the pytest terminal
summary.  All comparisons are exact unless a numeric tolerance is stated.
"""

from itertools import product

from acceptance_log import criterion
from goldens import REFERENCE, agree_on_grid
from rcjones.algebra import LaurentPoly, identity, mat_mul, t
from rcjones.braid import BraidWord, close, markov_moves, parse_braid
from rcjones.burau import alexander_conway, rho, torres_check
from rcjones.rmatrix import (
    color_degrees,
    colored_jones,
    is_odd_in_each,
    melvin_morton_coeffs,
    symmetry_principle_check,
    total_degree,
    yang_baxter_holds,
)
from rcjones.u1rc import gen_c_table, gen_t_polys, t_minus_from_plus, u1rc_series
from rcjones.verify import fox_alexander, kauffman_jones, mu_sum, resummation_check, symmetric_normalize

UNKNOT = BraidWord(1)
HOPF = parse_braid("2: 1 1")
TREFOIL = parse_braid("2: 1 1 1")
TREFOIL_ALT = parse_braid("3: 1 2 1 2")
FIGURE_EIGHT = parse_braid("3: 1 -2 1 -2")
T24 = parse_braid("2: 1 1 1 1")
SPLIT = parse_braid("2:")

one, zero = LaurentPoly.const(1), LaurentPoly()


def test_criterion_01_goldens():
    with criterion(1, "golden rho, T-polynomials, T(-) relation, C_00", 5):
        t1, t2 = t(1), t(2)
        assert rho(1, t1, t2) == [[one - t(2, -1), t(1, -1)], [one, zero]]
        assert rho(-1, t1, t2) == [[zero, one], [t2, t(1, -1) * t2 * (one - t1)]]
        assert mat_mul(rho(1, t1, t2), rho(-1, t2, t1)) == identity(2)
        table = gen_t_polys(3)
        for _, generated, fn in REFERENCE:
            assert agree_on_grid(table[(1,) + generated], fn), generated
        for j in range(4):
            for k in range(4 - j):
                assert t_minus_from_plus(table, j, k) == table[(-1, j, k)].coeffs
        assert gen_c_table(3)[(0, 0)] == 1


def test_criterion_02_alexander_anchors():
    with criterion(2, "Alexander anchors and Torres formula", 5):
        assert alexander_conway(HOPF).nabla == one
        assert alexander_conway(UNKNOT).delta == one
        assert alexander_conway(SPLIT).nabla == zero
        for b in (HOPF, T24):
            for i in range(2):
                assert torres_check(b, i)


def _knot_words():
    yield UNKNOT
    for n in (2, 3):
        letters = [w for p in range(1, n) for w in (p, -p)]
        for length in range(1, 7):
            for word in product(letters, repeat=length):
                b = BraidWord.from_word(n, word)
                if close(b).L == 1:
                    yield b


def test_criterion_03_fox_equals_burau():
    with criterion(3, "Burau Delta = Fox Delta on all knot closures, <= 3 strands, <= 6 crossings", 120):
        count = 0
        for b in _knot_words():
            burau = alexander_conway(b).delta
            fox = fox_alexander(b)
            assert symmetric_normalize(burau) == fox, str(b)
            assert burau == fox, str(b)
            count += 1
        assert count > 1000


def test_criterion_04_bracket_oracle():
    with criterion(4, "R-matrix J = Kauffman-bracket J at color 2", 30):
        for b in (TREFOIL, FIGURE_EIGHT, HOPF, T24):
            assert colored_jones(b, [2] * close(b).L) == kauffman_jones(b), str(b)


def _same_series(a, b, order):
    assert a.nabla_denominator() == b.nabla_denominator()
    for n in range(order + 1):
        assert a.nabla_form(n) == b.nabla_form(n), n


def test_criterion_05_representation_sanity():
    with criterion(5, "Yang-Baxter; Markov invariance of J and of the U(1)-RC series", 120):
        for g in (1, 2, 3):
            assert yang_baxter_holds(g)
        order = 3
        for base in (TREFOIL, HOPF):
            L = close(base).L
            ref_series = u1rc_series(base, order)
            ref_j = {a: colored_jones(base, [a] * L) for a in (2, 3)}
            for m in markov_moves(base) + [TREFOIL_ALT] * (base is TREFOIL):
                for a, j in ref_j.items():
                    assert colored_jones(m, [a] * L) == j, (str(m), a)
                _same_series(ref_series, u1rc_series(m, order), order)


def test_criterion_06_melvin_morton():
    with criterion(6, "Melvin-Morton coefficients odd, degree in each color <= 2n+1, held-out exact", 120):
        for b in (TREFOIL, HOPF):
            L = close(b).L
            # the held-out color check runs inside the extraction
            coeffs = melvin_morton_coeffs(b, 3)
            for n, poly in coeffs.items():
                assert is_odd_in_each(poly, L), (str(b), n)
                assert all(d <= 2 * n + 1 for d in color_degrees(poly, L)), (str(b), n)
                # a knot has a single color, so this is also the total degree
                assert total_degree(poly) <= 2 * n + L


def test_criterion_07_leading_term():
    with criterion(7, "h^0 of h*Jhr*nabla = 1; D-powers <= 2n+1; 2-power denominators", 120):
        for b in (UNKNOT, TREFOIL, HOPF, T24):
            s = u1rc_series(b, 3)
            num, den = s.leading_times_nabla()
            assert num == den, str(b)
            for n in range(4):
                assert s.coefficient(n).power <= 2 * n + 1
                assert all(d & (d - 1) == 0 for d in s.lifted(n).coefficient_denominators())


def test_criterion_08_resummation():
    with criterion(8, "resummation equals the colored Jones expansion through h^6", 600):
        cases = [(UNKNOT, (a,)) for a in (1, 2, 3)]
        cases += [(TREFOIL, (a,)) for a in (1, 2, 3)]
        cases += [(HOPF, al) for al in product((1, 2, 3), repeat=2)]
        cases += [(T24, (2, 2))]
        for b, colors in cases:
            total = mu_sum(b, colors, 6)
            assert all(total.coefficient(k) == 0 for k in range(total.low, 0)), (str(b), colors)
            report = resummation_check(b, colors, 6)
            assert report.passed, report.to_json()


def test_criterion_09_symmetry_principle():
    with criterion(9, "Symmetry Principle at K = 5, residual < 1e-9 at 50 digits", 30):
        ok, res = symmetry_principle_check(HOPF, [2, 3], 1, 5, dps=50)
        assert ok and res < 1e-9
        ok, res = symmetry_principle_check(TREFOIL, [2], 0, 5, dps=50)
        assert ok and res < 1e-9


def test_criterion_10_parity():
    with criterion(10, "Jhr(t^-1) = (-1)^L Jhr(t) through h^3", 120):
        for b in (UNKNOT, TREFOIL, HOPF):
            assert u1rc_series(b, 3).parity_holds(3), str(b)
