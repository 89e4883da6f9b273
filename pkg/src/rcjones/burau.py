"""Colored Burau matrices and the Alexander-Conway function of a braid closure."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import LaurentPoly, det_bareiss, identity, t, tvar
from .braid import BraidWord, LinkClosure, close, delete_component


def rho(sign: int, tin1: LaurentPoly, tin2: LaurentPoly) -> list[list[LaurentPoly]]:
    """2x2 block for a crossing whose incoming strands carry ``tin1`` (left)
    and ``tin2`` (right)."""
    one, zero = LaurentPoly.const(1), LaurentPoly()
    if sign > 0:
        return [[one - tin2 ** -1, tin1 ** -1], [one, zero]]
    return [[zero, one], [tin2, tin1 ** -1 * tin2 * (one - tin1)]]


def apply_block_left(mat, p: int, block) -> list[list]:
    """Return block_(p) @ mat, the block acting on rows p-1 and p (1-based p)."""
    out = [row[:] for row in mat]
    r0, r1 = mat[p - 1], mat[p]
    (a, b), (c, d) = block
    out[p - 1] = [a * x + b * y for x, y in zip(r0, r1)]
    out[p] = [c * x + d * y for x, y in zip(r0, r1)]
    return out


def burau_of_braid(b: BraidWord, c: LinkClosure | None = None) -> list[list[LaurentPoly]]:
    """Product of the letter blocks; the first letter acts first on column vectors."""
    c = c or close(b)
    m = identity(b.strands)
    for (p, s), (n1, n2) in zip(b.letters, c.crossing_components):
        m = apply_block_left(m, p, rho(s, t(n1 + 1), t(n2 + 1)))
    return m


def reduced_det(m: list[list[LaurentPoly]]) -> LaurentPoly:
    """det(1 - Q m) with Q = diag(0, 1, ..., 1): the minor of 1 - m without row/column 1."""
    n = len(m)
    minor = [[(LaurentPoly.const(1) if i == j else LaurentPoly()) - m[i][j] for j in range(1, n)]
             for i in range(1, n)]
    return det_bareiss(minor)


def phi0(c: LinkClosure) -> LaurentPoly:
    """t1^{1/2} prod_j t_j^{(-N_j + sum_i l_ij)/2}."""
    exps = {tvar(1): Fraction(1, 2)}
    for j in range(c.L):
        e = Fraction(-c.strands_per_component[j] + c.column_sum(j), 2)
        exps[tvar(j + 1)] = exps.get(tvar(j + 1), 0) + e
    return LaurentPoly.monomial(exps)


def correction_factor(c: LinkClosure) -> LaurentPoly:
    """prod_j t_j^{-(sum_{i != j} l_ij + 1)/2}."""
    return LaurentPoly.monomial({tvar(j + 1): Fraction(-(c.offdiag_sum(j) + 1), 2) for j in range(c.L)})


def half_diff(var: str) -> LaurentPoly:
    """v^{1/2} - v^{-1/2}."""
    return LaurentPoly.var(var, Fraction(1, 2)) - LaurentPoly.var(var, Fraction(-1, 2))


@dataclass(frozen=True)
class AlexanderResult:
    """For L >= 2, ``nabla`` is the Conway function.  For a knot ``nabla`` is
    None (it is not a Laurent polynomial) and ``delta`` holds Delta, with
    nabla = delta / (t^{1/2} - t^{-1/2})."""

    L: int
    det: LaurentPoly
    phi0: LaurentPoly
    nabla: LaurentPoly | None
    delta: LaurentPoly | None
    vanishing: bool

    def nabla_fraction(self) -> tuple[LaurentPoly, LaurentPoly]:
        """(numerator, denominator) of the Conway function."""
        if self.L == 1:
            return self.delta, half_diff(tvar(1))
        return self.nabla, LaurentPoly.const(1)

    def to_json(self) -> dict:
        out = {"L": self.L, "vanishing": self.vanishing, "det": self.det.to_json()}
        if self.L == 1:
            out["delta"] = self.delta.to_json()
            out["nabla"] = {"num": self.delta.to_json(), "den": half_diff(tvar(1)).to_json()}
        else:
            out["nabla"] = self.nabla.to_json()
        return out


def alexander_conway(b: BraidWord) -> AlexanderResult:
    c = close(b)
    d = reduced_det(burau_of_braid(b, c))
    f = phi0(c)
    top = f * d
    if c.L == 1:
        return AlexanderResult(1, d, f, None, top, not top)
    nabla = top.divide_exact(half_diff(tvar(1)))
    return AlexanderResult(c.L, d, f, nabla, None, not nabla)


def torres_check(b: BraidWord, i: int) -> bool:
    """Torres formula for component ``i`` (0-based) of a link with L >= 2."""
    c = close(b)
    if c.L < 2:
        raise ValueError("Torres formula needs at least two components")
    whole = alexander_conway(b)
    lhs = whole.nabla.set_one([tvar(i + 1)])
    sub, mapping = delete_component(b, i)
    subres = alexander_conway(sub)
    back = {tvar(new + 1): tvar(old + 1) for old, new in mapping.items()}
    num, den = subres.nabla_fraction()
    num, den = num.rename(back), den.rename(back)
    plus = LaurentPoly.monomial({tvar(j + 1): Fraction(c.lk(i, j), 2) for j in range(c.L) if j != i})
    minus = LaurentPoly.monomial({tvar(j + 1): Fraction(-c.lk(i, j), 2) for j in range(c.L) if j != i})
    return lhs * den == (plus - minus) * num


def conway_symmetry_holds(res: AlexanderResult) -> bool:
    """nabla(t^{-1}) = (-1)^L nabla(t)."""
    num, den = res.nabla_fraction()
    sign = -1 if res.L % 2 else 1
    return num.invert_vars() * den == (num * den.invert_vars()).scale(sign)
