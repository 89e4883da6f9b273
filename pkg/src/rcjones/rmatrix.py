"""R-matrix action of braids on tensor products of SU_q(2) modules and the
colored Jones polynomial as a quantum trace."""

from __future__ import annotations

from functools import lru_cache
from itertools import product as iproduct
from typing import Sequence

import mpmath
from gmpy2 import mpq

from .algebra import (
    HSeries,
    LaurentPoly,
    eval_monomials,
    interpolate_tensor,
    qfactorial,
)
from .braid import BraidWord, close
from .errors import (
    ColorCountMismatch,
    InterpolationInconsistent,
    NonPositiveColor,
    StateSpaceTooLarge,
)

MAX_STATES = 10 ** 5

# (m1, m2) -> [((m1', m2'), coefficient), ...]
RBlock = dict


def _qpow(quarters: int) -> LaurentPoly:
    return LaurentPoly._raw(("q",), {(quarters,): mpq(1)})


@lru_cache(maxsize=None)
def _qfact(x: int) -> LaurentPoly:
    return qfactorial(x)


@lru_cache(maxsize=None)
def _phq_pow(n: int) -> LaurentPoly:
    return (_qpow(2) - _qpow(-2)) ** n


def r_entry(g1: int, g2: int, m1: int, m2: int, n: int) -> LaurentPoly:
    """Coefficient of f_{m1-n} (x) f_{m2+n} in R(f_{m1} (x) f_{m2})."""
    a = g2 - m2 - 1
    ratio1 = _qfact(a).divide_exact(_qfact(a - n))
    ratio2 = _qfact(m1).divide_exact(_qfact(m1 - n) * _qfact(n))
    quarters = (g1 - 2 * m1 - 1) * (g2 - 2 * m2 - 1) - n * (g1 - g2 - 2 * m1 + 2 * m2 + n + 1)
    return _phq_pow(n) * ratio1 * ratio2 * _qpow(quarters)


@lru_cache(maxsize=None)
def _r_check(g1: int, g2: int) -> RBlock:
    """R-check = P R : V_{g1} (x) V_{g2} -> V_{g2} (x) V_{g1}."""
    out = {}
    for m1 in range(g1):
        for m2 in range(g2):
            terms = []
            for n in range(0, min(m1, g2 - 1 - m2) + 1):
                terms.append(((m2 + n, m1 - n), r_entry(g1, g2, m1, m2, n)))
            out[(m1, m2)] = terms
    return out


def _invert_block(fwd: RBlock, g_src1: int, g_src2: int) -> RBlock:
    """Inverse of ``fwd`` : V_{a} (x) V_{b} -> V_{b} (x) V_{a}, as a map
    V_{b} (x) V_{a} -> V_{a} (x) V_{b} with (g_src1, g_src2) = (b, a).

    The forward map conserves m1 + m2 and is triangular with monomial
    diagonal, so the inverse is found by exact substitution per weight sector.
    """
    sectors: dict[int, list] = {}
    for (m1, m2) in fwd:
        sectors.setdefault(m1 + m2, []).append((m1, m2))
    inv: RBlock = {}
    for s, sources in sectors.items():
        # order sources by k = s - m1 = m2; targets (x, y) with x >= m2
        sources.sort(key=lambda st: st[1])
        targets = sorted({tgt for src in sources for tgt, _ in fwd[src]})
        idx_t = {tg: i for i, tg in enumerate(targets)}
        n = len(sources)
        if len(targets) != n:
            raise AssertionError("R-check sector is not square")
        # matrix M[target][source]
        M = [[LaurentPoly() for _ in range(n)] for _ in range(n)]
        for j, src in enumerate(sources):
            for tg, c in fwd[src]:
                M[idx_t[tg]][j] = c
        # targets sorted by first index; target i pairs with source i on the diagonal
        X = [[LaurentPoly() for _ in range(n)] for _ in range(n)]
        for j in range(n):
            X[j][j] = M[j][j].unit_inverse()
            for i in range(j + 1, n):
                acc = LaurentPoly()
                for k in range(j, i):
                    if M[i][k] and X[k][j]:
                        acc = acc + M[i][k] * X[k][j]
                X[i][j] = -(acc * M[i][i].unit_inverse())
        # X = M^{-1}: maps target-space vectors back to source states
        for j, tg in enumerate(targets):
            terms = []
            for i, src in enumerate(sources):
                if X[i][j]:
                    terms.append((src, X[i][j]))
            inv[tg] = terms
    return inv


@lru_cache(maxsize=None)
def r_block(g1: int, g2: int, sign: int) -> RBlock:
    """Block acting on a crossing with incoming colors (g1 left, g2 right).

    sign=+1 gives R-check on V_{g1} (x) V_{g2}; sign=-1 gives the inverse of
    R-check on V_{g2} (x) V_{g1}, again as a map out of V_{g1} (x) V_{g2}.
    """
    if g1 < 1 or g2 < 1:
        raise NonPositiveColor("colors must be positive")
    if sign > 0:
        return _r_check(g1, g2)
    return _invert_block(_r_check(g2, g1), g1, g2)


def apply_block(vec: dict, p: int, block: RBlock) -> dict:
    """Apply a two-slot block at positions (p-1, p) (1-based p) to a sparse vector."""
    out: dict = {}
    i = p - 1
    for state, c in vec.items():
        for (x, y), coef in block[(state[i], state[i + 1])]:
            new = state[:i] + (x, y) + state[i + 2:]
            v = c * coef
            if new in out:
                s = out[new] + v
                if s:
                    out[new] = s
                else:
                    del out[new]
            else:
                out[new] = v
    return out


def strand_colors(b: BraidWord, colors: Sequence[int]) -> list[int]:
    c = close(b)
    if len(colors) != c.L:
        raise ColorCountMismatch(f"{c.L} components but {len(colors)} colors")
    for a in colors:
        if int(a) < 1:
            raise NonPositiveColor(f"color {a} is not positive")
    return [int(colors[c.component_of_strand[s]]) for s in range(b.strands)]


def braid_operator_apply(b: BraidWord, colors: Sequence[int], state: tuple) -> dict:
    """Image of one basis state under the braid operator."""
    cols = strand_colors(b, colors)
    vec = {tuple(state): LaurentPoly.const(1)}
    at = list(cols)
    for p, s in b.letters:
        vec = apply_block(vec, p, r_block(at[p - 1], at[p], s))
        at[p - 1], at[p] = at[p], at[p - 1]
    return vec


def phi_sl_quarters(b: BraidWord, colors: Sequence[int]) -> int:
    """4 * phi_sl = sum_j l_jj (alpha_j^2 - 1)."""
    c = close(b)
    return sum(c.self_linking(j) * (int(colors[j]) ** 2 - 1) for j in range(c.L))


def colored_jones(b: BraidWord, colors: Sequence[int]) -> LaurentPoly:
    """q^{-phi_sl} Tr(Q_q B) over the tensor product of colored modules."""
    cols = strand_colors(b, colors)
    dim = 1
    for g in cols:
        dim *= g
    if dim > MAX_STATES:
        raise StateSpaceTooLarge(f"{dim} basis states exceed the limit of {MAX_STATES}")
    blocks = []
    at = list(cols)
    for p, s in b.letters:
        blocks.append((p, r_block(at[p - 1], at[p], s)))
        at[p - 1], at[p] = at[p], at[p - 1]
    acc: dict = {}
    for state in iproduct(*[range(g) for g in cols]):
        vec = {state: LaurentPoly.const(1)}
        for p, blk in blocks:
            vec = apply_block(vec, p, blk)
            if not vec:
                break
        c = vec.get(state)
        if not c:
            continue
        weight = sum(2 * (g - 2 * m - 1) for g, m in zip(cols, state))  # quarter units of q^{H/2}
        acc[weight] = acc[weight] + c if weight in acc else c
    total = LaurentPoly()
    for w, c in acc.items():
        total = total + c * _qpow(w)
    return total * _qpow(-phi_sl_quarters(b, colors))


def jones_metadata(b: BraidWord, colors: Sequence[int]) -> dict:
    c = close(b)
    return {"L": c.L, "colors": [int(a) for a in colors],
            "phi_sl": str(mpq(phi_sl_quarters(b, colors), 4))}


def yang_baxter_holds(g: int) -> bool:
    """(R x 1)(1 x R)(R x 1) = (1 x R)(R x 1)(1 x R) on V_g^{(x)3}."""
    b1 = BraidWord(3, ((1, 1), (2, 1), (1, 1)))
    b2 = BraidWord(3, ((2, 1), (1, 1), (2, 1)))
    cols = (g, g, g)
    for st in iproduct(range(g), repeat=3):
        if _apply_word(b1, cols, st) != _apply_word(b2, cols, st):
            return False
    return True


def _apply_word(b: BraidWord, cols: Sequence[int], state) -> dict:
    vec = {tuple(state): LaurentPoly.const(1)}
    at = list(cols)
    for p, s in b.letters:
        vec = apply_block(vec, p, r_block(at[p - 1], at[p], s))
        at[p - 1], at[p] = at[p], at[p - 1]
    return vec


def h_expansion(p: LaurentPoly, order: int) -> HSeries:
    return HSeries.from_q_poly(p, order)


def melvin_morton_coeffs(b: BraidWord, n_max: int, colors_max: int | None = None) -> dict:
    """Coefficients P_{alpha;n}, n <= n_max, as polynomials in the colors.

    Interpolates h^n coefficients of J on the grid alpha_j in {1..d+1},
    d = 2 n_max + 1 (or ``colors_max``), with a general (not parity
    restricted) monomial basis; one held-out color vector checks the fit.
    Returns {n: {exponent tuple: coefficient}}.
    """
    c = close(b)
    top = colors_max if colors_max is not None else 2 * n_max + 2
    nodes = list(range(1, top + 1))
    grids = [nodes] * c.L
    series = {}
    for alpha in iproduct(*grids):
        series[alpha] = h_expansion(colored_jones(b, alpha), n_max)
    out = {}
    held = tuple([top + 1] * c.L)
    held_series = h_expansion(colored_jones(b, held), n_max)
    for n in range(n_max + 1):
        vals = {a: s.coefficient(n) for a, s in series.items()}
        poly = interpolate_tensor(grids, vals)
        if eval_monomials(poly, held) != held_series.coefficient(n):
            raise InterpolationInconsistent(f"held-out color {held} disagrees at h^{n}")
        out[n] = poly
    return out


def is_odd_in_each(poly: dict, L: int) -> bool:
    return all(e[j] % 2 == 1 for e in poly for j in range(L))


def total_degree(poly: dict) -> int:
    return max((sum(e) for e in poly), default=-1)


def color_degrees(poly: dict, L: int) -> list[int]:
    """Degree of ``poly`` in each color separately."""
    return [max((e[j] for e in poly), default=-1) for j in range(L)]


def symmetry_principle_check(b: BraidWord, colors: Sequence[int], j: int, K: int,
                             dps: int = 50) -> tuple[bool, float]:
    """Compare J at alpha and at alpha' (alpha'_j = K - alpha_j) at q = e^{2 pi i/K}.

    ``j`` is the 0-based component whose color is reflected.
    """
    c = close(b)
    colors = [int(a) for a in colors]
    if K < 3 or any(not 1 <= a <= K - 1 for a in colors):
        raise ValueError("need K >= 3 and 1 <= alpha_j <= K-1")
    flipped = list(colors)
    flipped[j] = K - colors[j]
    exponent = sum(c.lk(j, k) * (colors[k] - 1) for k in range(c.L) if k != j)
    sign = -1 if exponent % 2 else 1
    with mpmath.workdps(max(dps, 50)):
        root = mpmath.exp(1j * mpmath.pi / (2 * K))
        lhs = colored_jones(b, flipped).eval_complex({"q": root}, dps)
        rhs = colored_jones(b, colors).eval_complex({"q": root}, dps)
        residual = abs(lhs - sign * rhs)
    return residual < 1e-9, float(residual)
