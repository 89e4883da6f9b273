"""Independent oracles and cross-checks.

* ``kauffman_jones``: the Jones polynomial from a Temperley-Lieb state sum of
  the Kauffman bracket, mapped onto the color-2 colored Jones polynomial by a
  calibration fixed once on the unknot and the Hopf link.
* ``fox_alexander``: the Alexander polynomial of a knot from Fox derivatives
  of the Wirtinger presentation of the braid closure diagram.
* ``resummation_check``: the sum over sign vectors mu of
  (prod mu) q^{lk(L; mu alpha)} Jhr(q^{mu alpha}) against the h-expansion of
  the colored Jones polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iproduct

from gmpy2 import mpq

from .algebra import HSeries, LaurentPoly, det_bareiss, qint, rat_str, t
from .braid import BraidWord, close
from .errors import NegativePowersSurvive, NotAKnot
from .rmatrix import colored_jones, h_expansion
from .u1rc import U1RCSeries, substitute_colors, u1rc_series

# ---------------------------------------------------------------------------
# Kauffman bracket

# Frozen calibration, found by matching the unknot and the Hopf link:
# J_2 = (-1)^{L-1} [2] V(A -> q^{A_TO_Q/4}) q^{LINK_Q_QUARTERS/4 * sum_{i<j} l_ij}.
A_TO_Q = 1
LINK_Q_QUARTERS = 6


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _loops(b: BraidWord, smoothing: tuple[int, ...]) -> int:
    """Number of circles of the closed braid with each crossing smoothed.

    Smoothing 0 keeps the strands vertical, 1 joins them by a cup and a cap.
    Endpoint (pos, level) sits between crossings; level len(word) is glued
    back to level 0 by the closure.
    """
    n, c = b.strands, len(b.letters)
    idx = lambda pos, lev: (lev % c if c else 0) * n + pos
    size = n * max(c, 1)
    parent = list(range(size))

    def join(x, y):
        rx, ry = _find(parent, x), _find(parent, y)
        if rx != ry:
            parent[rx] = ry

    for lev, ((p, _), sm) in enumerate(zip(b.letters, smoothing)):
        for pos in range(n):
            if pos in (p - 1, p):
                continue
            join(idx(pos, lev), idx(pos, lev + 1))
        if sm == 0:
            join(idx(p - 1, lev), idx(p - 1, lev + 1))
            join(idx(p, lev), idx(p, lev + 1))
        else:
            join(idx(p - 1, lev), idx(p, lev))
            join(idx(p - 1, lev + 1), idx(p, lev + 1))
    return len({_find(parent, x) for x in range(size)})


def _a(k: int) -> LaurentPoly:
    return LaurentPoly.monomial({"A": k})


def kauffman_bracket(b: BraidWord) -> LaurentPoly:
    """<closure of b> with <O> = 1, loop value d = -A^2 - A^{-2}."""
    d = -(_a(2) + _a(-2))
    total = LaurentPoly()
    for sm in iproduct((0, 1), repeat=len(b.letters)):
        # positive crossing: A for the vertical smoothing, A^{-1} for cup-cap
        power = sum((1 if s == 0 else -1) * sign for s, (_, sign) in zip(sm, b.letters))
        total = total + _a(power) * d ** (_loops(b, sm) - 1)
    return total


def jones_from_bracket(b: BraidWord) -> LaurentPoly:
    """Unframed Jones invariant in A: (-A^3)^{-writhe} <L>, unknot = 1."""
    w = b.writhe()
    sign = -1 if w % 2 else 1
    return (kauffman_bracket(b) * _a(-3 * w)).scale(sign)


def kauffman_jones(b: BraidWord) -> LaurentPoly:
    """Color-2 colored Jones polynomial computed from the Kauffman bracket."""
    c = close(b)
    v = jones_from_bracket(b)
    vq = v.map_exponents(("q",), lambda d: {"q": A_TO_Q * d.get("A", 0)})
    link = sum(c.lk(i, j) for i in range(c.L) for j in range(i + 1, c.L))
    out = qint(2) * vq * LaurentPoly.monomial({"q": mpq(LINK_Q_QUARTERS * link, 4)})
    return out if c.L % 2 else -out


# ---------------------------------------------------------------------------
# Fox calculus


@dataclass(frozen=True)
class WirtingerPresentation:
    """Generators are arcs 0..arcs-1; relator i reads x_out = x_over^{e} x_in x_over^{-e}."""

    arcs: int
    relators: tuple[tuple[int, int, int, int], ...]  # (over, incoming, outgoing, e)
    component_of_arc: tuple[int, ...]


def wirtinger(b: BraidWord) -> WirtingerPresentation:
    """Wirtinger presentation of the closure diagram.

    At a positive letter the strand moving right passes over.  Each crossing
    starts a new arc on its under strand; the closure glues top arcs to the
    bottom ones.
    """
    c = close(b)
    n = b.strands
    labels = list(range(n))
    comp = list(c.component_of_strand)
    strand_at = list(range(n))
    nxt = n
    raw = []
    for p, s in b.letters:
        left, right = labels[p - 1], labels[p]
        if s > 0:
            over, under = left, right
        else:
            over, under = right, left
        new = nxt
        nxt += 1
        comp.append(c.component_of_strand[strand_at[p - 1 if s < 0 else p]])
        raw.append((over, under, new, s))
        if s > 0:
            labels[p - 1], labels[p] = new, over
        else:
            labels[p - 1], labels[p] = over, new
        strand_at[p - 1], strand_at[p] = strand_at[p], strand_at[p - 1]
    parent = list(range(nxt))
    for pos in range(n):
        ra, rb = _find(parent, labels[pos]), _find(parent, pos)
        if ra != rb:
            parent[ra] = rb
    roots = sorted({_find(parent, x) for x in range(nxt)})
    renum = {r: i for i, r in enumerate(roots)}
    lab = lambda x: renum[_find(parent, x)]
    rels = tuple((lab(o), lab(i), lab(m), e) for o, i, m, e in raw)
    comps = [0] * len(roots)
    for x in range(nxt):
        comps[lab(x)] = comp[x]
    return WirtingerPresentation(len(roots), rels, tuple(comps))


def alexander_matrix(w: WirtingerPresentation) -> list[list[LaurentPoly]]:
    """Abelianized Fox Jacobian (all generators map to t1) of x_over^e x_in x_over^{-e} x_out^{-1}."""
    one, tt = LaurentPoly.const(1), t(1)
    rows = []
    for over, inc, out, e in w.relators:
        row = [LaurentPoly() for _ in range(w.arcs)]
        te = tt if e > 0 else t(1, -1)
        row[over] = row[over] + (one - tt if e > 0 else one - t(1, -1))
        row[inc] = row[inc] + te
        row[out] = row[out] - one
        rows.append(row)
    return rows


def symmetric_normalize(p: LaurentPoly) -> LaurentPoly:
    """The unit multiple +-t^k of p with p(t^{-1}) = p(t) and p(1) > 0."""
    if not p:
        return p
    if p.is_constant():
        return -p if p.constant_value() < 0 else p
    (lo,), (hi,) = p.degree_box()
    shifted = p.mul_monomial({"t1": -(lo + hi) // 2})
    if shifted.eval_rat({"t1": 1}) < 0:
        shifted = -shifted
    return shifted


def fox_alexander(b: BraidWord) -> LaurentPoly:
    """Alexander polynomial of a knot closure, normalized symmetrically with Delta(1) = 1."""
    if close(b).L != 1:
        raise NotAKnot("the Fox-calculus oracle handles knots only")
    w = wirtinger(b)
    if not w.relators:
        return LaurentPoly.const(1)
    m = alexander_matrix(w)
    minor = [row[:-1] for row in m[:-1]]
    return symmetric_normalize(det_bareiss(minor) if minor else LaurentPoly.const(1))


# ---------------------------------------------------------------------------
# resummation


@dataclass
class ResummationReport:
    check: str
    braid: str
    colors: list[int]
    order: int
    passed: bool
    residuals: dict = field(default_factory=dict)
    negative_part_zero: bool = True

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "input": {"braid": self.braid, "colors": self.colors},
            "order": self.order,
            "pass": self.passed,
            "negative_part_zero": self.negative_part_zero,
            "residuals": {str(k): v for k, v in sorted(self.residuals.items())},
        }


@lru_cache(maxsize=64)
def _series(b: BraidWord, nmax: int) -> U1RCSeries:
    return u1rc_series(b, nmax)


def series_order_for(L: int, order: int) -> int:
    """Series order needed for the resummed value to be exact through h^order."""
    return order if L == 1 else order + 1


def mu_sum(b: BraidWord, colors, order: int) -> HSeries:
    """sum over mu in {+1} x {+-1}^{L-1} of (prod mu) q^{lk(mu alpha)} Jhr(q^{mu alpha})."""
    c = close(b)
    s = _series(b, series_order_for(c.L, order))
    total = None
    for tail in iproduct((1, -1), repeat=c.L - 1):
        mu = (1,) + tail
        term = substitute_colors(s, [m * a for m, a in zip(mu, colors)], order)
        if tail.count(-1) % 2:
            term = -term
        total = term if total is None else total + term
    return total


def resummation_check(b: BraidWord, colors, order: int) -> ResummationReport:
    colors = [int(a) for a in colors]
    total = mu_sum(b, colors, order)
    for k in range(total.low, 0):
        v = total.coefficient(k)
        if v:
            raise NegativePowersSurvive(k, v, f"h^{k} coefficient {rat_str(v)} does not cancel")
    jones = h_expansion(colored_jones(b, colors), order)
    residuals = {}
    for k in range(order + 1):
        diff = total.coefficient(k) - jones.coefficient(k)
        if diff:
            residuals[k] = rat_str(diff)
    return ResummationReport("resummation", str(b), colors, order, not residuals, residuals)
