"""The U(1) reducible connection series h*Jhr(t; h) of a braid closure.

The series is produced by the differential-operator recipe: polynomials
T^{(+-)}_{j,k}(m1, m2, n) and numbers C_{k,n} define an operator that acts on
1/det(1 - lambda Q B(eps)), where B(eps) is a parametrized Burau matrix.

Two engines evaluate that operator.

* ``jet``: the literal route.  The determinant is expanded as a jet in all
  per-letter eps variables and in mu = lambda - 1, and derivatives are read
  off as jet coefficients.  The jet dimension grows with the crossing count,
  so this route is only practical at low order.
* ``fock``: the determinant is the generating function of traces of
  symmetric powers, so the eps-derivatives can be applied crossing by
  crossing on occupation-number states.  The trace at each total occupation
  M is exact; the order-K part is a rational function of lambda with
  denominator det(lambda)^{2K+1}, whose numerator is recovered from finitely
  many M and checked on extra ones.

Both engines return identical coefficients (tested).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from math import comb, factorial
from typing import Sequence

from gmpy2 import mpq

from .algebra import (
    DenPowerFrac,
    EpsJet,
    HSeries,
    LaurentPoly,
    binom_rat,
    interpolate_tensor,
    t,
    tvar,
)
from .braid import BraidWord, LinkClosure, close
from .burau import AlexanderResult, alexander_conway, burau_of_braid, half_diff
from .errors import (
    DegreeBoundViolated,
    DenominatorVanishesToOrder,
    InterpolationInconsistent,
    JetCapExceeded,
    VanishingAlexander,
)

ZERO = mpq(0)
ONE = mpq(1)


# ---------------------------------------------------------------------------
# C-table

def gen_c_table(kmax: int) -> dict[tuple[int, int], mpq]:
    """C_{k,n}, n <= k <= kmax, from (1/n!)((1+h)^{-1/2} - 1)^n = sum_k C_{k,n} h^k."""
    base = [binom_rat(mpq(-1, 2), k) for k in range(kmax + 1)]
    base[0] = ZERO
    out = {}
    power = [ONE] + [ZERO] * kmax
    for n in range(kmax + 1):
        for k in range(kmax + 1):
            if power[k]:
                out[(k, n)] = power[k] / factorial(n)
        nxt = [ZERO] * (kmax + 1)
        for i, a in enumerate(power):
            if a:
                for j in range(1, kmax + 1 - i):
                    nxt[i + j] += a * base[j]
        power = nxt
    return out


# ---------------------------------------------------------------------------
# T-polynomials
#
# Bivariate truncated series in (h, u) are lists indexed [h power][u power].

def _bz(kmax: int) -> list[list[mpq]]:
    return [[ZERO] * (kmax + 1) for _ in range(kmax + 1)]


def _b_mul(a, b, kmax: int):
    out = _bz(kmax)
    for i, ra in enumerate(a):
        for p, x in enumerate(ra):
            if not x:
                continue
            for j in range(kmax + 1 - i):
                rb = b[j]
                row = out[i + j]
                for r in range(kmax + 1 - p):
                    y = rb[r]
                    if y:
                        row[p + r] += x * y
    return out


def _u_mul(a: list[mpq], b: list[mpq], kmax: int) -> list[mpq]:
    out = [ZERO] * (kmax + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(kmax + 1 - i):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def _u_inv(a: list[mpq], kmax: int) -> list[mpq]:
    inv = [ONE / a[0]]
    for k in range(1, kmax + 1):
        acc = sum((a[i] * inv[k - i] for i in range(1, k + 1)), ZERO)
        inv.append(-acc * inv[0])
    return inv


def _qpow_series(x, kmax: int) -> list[mpq]:
    """(1+h)^x."""
    return [binom_rat(x, k) for k in range(kmax + 1)]


def _e_series(x: int, kmax: int) -> list[mpq]:
    """E(x) = (q^x - 1)/(x h), continued to x = 0 as log(1+h)/h."""
    out = []
    num = ONE
    for i in range(kmax + 1):
        out.append(num / factorial(i + 1))
        num *= (x - 1 - i)
    return out


def _y_table(sign: int, m1: int, m2: int, n: int, kmax: int, cache: dict):
    """h-u expansion of X^{(sign)} / (binom * (1 - t^{-1})^n) at one grid point."""
    if sign > 0:
        c = (m1 + 1) * m2 + n * (n + 1) // 2
        akey, a_args = ("A", m1, n), [(m1 - n + l, l) for l in range(1, n + 1)]
        bkey, b_shift = ("B", m2, n), [-m2 - l for l in range(1, n + 1)]
    else:
        c = -m1 * (m2 + 1) - n * (n + 1) // 2
        akey, a_args = ("A-", m2, n), [(-m2 + n - l, -l) for l in range(1, n + 1)]
        bkey, b_shift = ("B-", m1, n), [m1 + l for l in range(1, n + 1)]
    if akey not in cache:
        acc = [ONE] + [ZERO] * kmax
        for top, bot in a_args:
            acc = _u_mul(acc, _e_series(top, kmax), kmax)
            acc = _u_mul(acc, _u_inv(_e_series(bot, kmax), kmax), kmax)
        cache[akey] = acc
    if bkey not in cache:
        acc = _bz(kmax)
        acc[0][0] = ONE
        for s in b_shift:
            fac = _bz(kmax)
            fac[0][0] = ONE
            for k, v in enumerate(_qpow_series(s, kmax)):
                if k:
                    fac[k][1] = v
            acc = _b_mul(acc, fac, kmax)
        cache[bkey] = acc
    scal = _u_mul(_qpow_series(c, kmax), cache[akey], kmax)
    out = _bz(kmax)
    for i, x in enumerate(scal):
        if x:
            for j in range(kmax + 1 - i):
                for p, y in enumerate(cache[bkey][j]):
                    if y:
                        out[i + j][p] += x * y
    return out


def _falling(n: int, j: int) -> int:
    out = 1
    for l in range(j):
        out *= n - l
    return out


@dataclass(frozen=True)
class TPoly:
    """T^{(sign)}_{j,k} as {(a, b, c): coeff} for the monomial m1^a m2^b n^c."""

    sign: int
    j: int
    k: int
    coeffs: dict = field(hash=False, compare=False)

    def __call__(self, m1, m2, n) -> mpq:
        acc = ZERO
        for (a, b, c), v in self.coeffs.items():
            acc += v * mpq(m1) ** a * mpq(m2) ** b * mpq(n) ** c
        return acc

    def total_degree(self) -> int:
        return max((sum(e) for e in self.coeffs), default=-1)

    def degree_in(self, axis: int) -> int:
        return max((e[axis] for e in self.coeffs), default=-1)

    def __eq__(self, other):
        if not isinstance(other, TPoly):
            return NotImplemented
        return (self.sign, self.j, self.k, self.coeffs) == (other.sign, other.j, other.k, other.coeffs)

    def __hash__(self):
        return hash((self.sign, self.j, self.k, tuple(sorted(self.coeffs.items()))))


def _degree_bounds(sign: int, j: int, k: int) -> tuple[int, int, int]:
    """Per-variable degree bounds in (m1, m2, n) and the total bound."""
    if sign > 0:
        return k, j + k, j + 2 * k
    return j + k, k, j + 2 * k


@lru_cache(maxsize=None)
def gen_t_polys(kmax: int) -> dict[tuple[int, int, int], TPoly]:
    """All T^{(+-)}_{j,k} with j + k <= kmax, keyed by (sign, j, k).

    Each polynomial is interpolated on a box one node larger than its degree
    bounds in every direction; the extra layer must reproduce a polynomial
    within the bounds.
    """
    cache: dict = {}
    out = {}
    top = kmax + 1
    nbase = kmax  # n >= j keeps the falling factorial nonzero
    for sign in (1, -1):
        values = {}
        for m1 in range(top + 1):
            for m2 in range(top + 1):
                for n in range(nbase, nbase + 2 * kmax + 2):
                    values[(m1, m2, n)] = _y_table(sign, m1, m2, n, kmax, cache)
        for j in range(kmax + 1):
            for k in range(kmax + 1 - j):
                b1, b2, bt = _degree_bounds(sign, j, k)
                grids = [list(range(b1 + 2)), list(range(b2 + 2)),
                         list(range(nbase, nbase + bt + 2))]
                vals = {}
                for pt in iproduct(*grids):
                    y = values[pt][j + k][j]
                    vals[pt] = y / _falling(pt[2], j)
                poly = interpolate_tensor(grids, vals)
                for e in poly:
                    if e[0] > b1 or e[1] > b2 or e[2] > bt:
                        raise InterpolationInconsistent(
                            f"T({sign:+d})_{j},{k} needs monomial m1^{e[0]} m2^{e[1]} n^{e[2]}")
                    if sum(e) > bt:
                        raise DegreeBoundViolated(f"T({sign:+d})_{j},{k} has total degree {sum(e)}")
                out[(sign, j, k)] = TPoly(sign, j, k, dict(sorted(poly.items())))
    return out


def t_minus_from_plus(tplus: dict, j: int, kprime: int) -> dict:
    """T^{(-)}_{j,k'} obtained from the T^{(+)} with m1 and m2 swapped and
    h replaced by -h/(1+h)."""
    acc: dict = {}
    big = j + kprime
    for (sign, jj, k), poly in tplus.items():
        if sign < 0 or jj != j:
            continue
        mm = j + k
        if mm > big:
            continue
        # [h^big] (-h)^mm (1+h)^{-mm}
        if mm == 0:
            w = 1 if big == 0 else 0
        else:
            w = (-1) ** big * comb(big - 1, mm - 1)
        if not w:
            continue
        for (a, b, c), v in poly.coeffs.items():
            key = (b, a, c)
            acc[key] = acc.get(key, ZERO) + v * w
    return {e: v for e, v in sorted(acc.items()) if v}


# ---------------------------------------------------------------------------
# recipe prefactor and the normalized series

@dataclass(frozen=True)
class Prefactor:
    """(1 - t1^{-1}) (1 + h) q^{q_exp} prod_j t_j^{t_exps[j]} multiplies the
    operator output to give h*Jhr."""

    q_exp: Fraction
    t_exps: tuple[Fraction, ...]

    def monomial(self) -> LaurentPoly:
        return LaurentPoly.monomial({tvar(j + 1): e for j, e in enumerate(self.t_exps)})

    def h_series(self, order: int) -> HSeries:
        """(1+h) q^{q_exp} (1 - t1^{-1}) prod t^..., as an h-series over LaurentPoly."""
        qs = HSeries.binomial(mpq(self.q_exp.numerator, self.q_exp.denominator) + 1, order)
        poly = (LaurentPoly.const(1) - t(1, -1)) * self.monomial()
        return HSeries([poly.scale(c) for c in qs.coeffs], 0, order, LaurentPoly())

    def to_json(self) -> dict:
        return {"factor": "(1 - t1^-1) (1 + h) / h",
                "q_exp": str(self.q_exp),
                "t_exps": [str(e) for e in self.t_exps]}


def prefactor(c: LinkClosure) -> Prefactor:
    """q^{(sum_j (l_jj - N_j) + sum_{i<j} l_ij)/2} prod_j t_j^{(N_j - sum_i l_ij)/2}."""
    q_twice = sum(c.self_linking(j) - c.strands_per_component[j] for j in range(c.L))
    q_twice += sum(c.lk(i, j) for i in range(c.L) for j in range(i + 1, c.L))
    q_exp = Fraction(q_twice, 2)
    t_exps = tuple(Fraction(c.strands_per_component[j] - c.column_sum(j), 2) for j in range(c.L))
    return Prefactor(q_exp, t_exps)


@dataclass
class U1RCSeries:
    """h*Jhr = sum_n h^n orders[n], each order a DenPowerFrac over ``D``."""

    L: int
    D: LaurentPoly
    orders: list[DenPowerFrac]
    prefactor: Prefactor
    alexander: AlexanderResult
    braid: BraidWord

    @property
    def order(self) -> int:
        return len(self.orders) - 1

    def coefficient(self, n: int) -> DenPowerFrac:
        return self.orders[n]

    def lifted(self, n: int) -> LaurentPoly:
        """Numerator of order n over D^{2n+1}."""
        f = self.orders[n]
        if f.power > 2 * n + 1:
            raise DegreeBoundViolated(f"order {n} needs D^{f.power}")
        return f.num * self.D ** (2 * n + 1 - f.power)

    def nabla_denominator(self) -> LaurentPoly:
        """The polynomial E with D = unit * E used for substitution: nabla for
        L >= 2, Delta for a knot."""
        num, _ = self.alexander.nabla_fraction()
        return num

    def nabla_form(self, n: int) -> LaurentPoly:
        """Numerator P_n of order n written as P_n / E^{2n+1}, E = nabla_denominator()."""
        num, den = self.alexander.nabla_fraction()
        f = self.lifted(n) * self.alexander.phi0 ** (2 * n + 1)
        if self.L == 1:
            return f
        return f.divide_exact(half_diff(tvar(1)) ** (2 * n + 1))

    def leading_times_nabla(self) -> tuple[LaurentPoly, LaurentPoly]:
        """(numerator, denominator) of the h^0 coefficient of h*Jhr*nabla."""
        num, den = self.alexander.nabla_fraction()
        return self.orders[0].num * num, self.D ** self.orders[0].power * den

    def parity_holds(self, upto: int | None = None) -> bool:
        """Jhr(t^{-1}) = (-1)^L Jhr(t), order by order through ``upto``."""
        upto = self.order if upto is None else upto
        sign = -1 if self.L % 2 else 1
        dinv = self.D.invert_vars()
        for n in range(upto + 1):
            num = self.lifted(n)
            p = 2 * n + 1
            if num.invert_vars() * self.D ** p != (num * dinv ** p).scale(sign):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "L": self.L,
            "braid": self.braid.to_json(),
            "D": self.D.to_json(),
            "orders": [{"n": n, "num": self.lifted(n).to_json(), "den_pow": 2 * n + 1}
                       for n in range(len(self.orders))],
            "prefactor": self.prefactor.to_json(),
            "alexander": self.alexander.to_json(),
        }


# ---------------------------------------------------------------------------
# shared pieces of both engines

def _poly_lam_coeffs(p: LaurentPoly, var: str = "lam") -> list[LaurentPoly]:
    """Coefficients of a polynomial in ``var`` (nonnegative powers only)."""
    if var not in p.vars:
        return [p]
    i = p.vars.index(var)
    rest = tuple(v for v in p.vars if v != var)
    buckets: dict[int, dict] = {}
    for e, c in p.terms.items():
        if e[i] < 0:
            raise ValueError(f"negative power of {var}")
        buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
    top = max(buckets)
    return [LaurentPoly(rest, buckets.get(d, {})) for d in range(top + 1)]


def _det_lambda(b: BraidWord, c: LinkClosure) -> list[LaurentPoly]:
    """Coefficients of det(1 - lambda Q B) in lambda, B the Burau matrix."""
    from .algebra import det_bareiss
    m = burau_of_braid(b, c)
    lam = LaurentPoly.var("lam")
    n = b.strands
    minor = [[(LaurentPoly.const(1) if i == j else LaurentPoly()) - lam * m[i][j] for j in range(1, n)]
             for i in range(1, n)]
    return _poly_lam_coeffs(det_bareiss(minor))


def _squared(coeffs: Sequence[LaurentPoly]) -> list[LaurentPoly]:
    """Coefficients of p(lambda^2) from those of p(lambda)."""
    out = [LaurentPoly()] * (2 * len(coeffs) - 1)
    for i, c in enumerate(coeffs):
        out[2 * i] = c
    return out


def _shift_one(coeffs: Sequence[LaurentPoly], upto: int) -> list[LaurentPoly]:
    """Coefficients in mu of p(1 + mu), through mu^upto."""
    out = []
    for i in range(upto + 1):
        acc = LaurentPoly()
        for d in range(i, len(coeffs)):
            if coeffs[d]:
                acc = acc + coeffs[d].scale(comb(d, i))
        out.append(acc)
    return out


def _mu_inverse_power(delta: Sequence[LaurentPoly], r: int, upto: int) -> list[LaurentPoly]:
    """Numerators P_i with det(1+mu)^{-r} = sum_i P_i mu^i / D0^{r+i}.

    ``delta`` holds the mu-coefficients of det(1 + mu), delta[0] = D0.
    """
    d0 = delta[0]
    # 1/det = sum_i p_i mu^i / D0^{i+1}:  p_i = -sum_{j>=1} delta_j p_{i-j} D0^{j-1}
    p = [LaurentPoly.const(1)]
    for i in range(1, upto + 1):
        acc = LaurentPoly()
        for j in range(1, i + 1):
            if j < len(delta) and delta[j]:
                acc = acc + delta[j] * p[i - j] * d0 ** (j - 1)
        p.append(-acc)
    # raise to the r-th power; numerators over D0^{r+i} combine without rescaling
    out = [LaurentPoly.const(1)] + [LaurentPoly()] * upto
    for _ in range(r):
        nxt = [LaurentPoly()] * (upto + 1)
        for i, a in enumerate(out):
            if not a:
                continue
            for j in range(upto + 1 - i):
                if p[j]:
                    nxt[i + j] = nxt[i + j] + a * p[j]
        out = nxt
    return out


def _finish(raw: list[DenPowerFrac], c: LinkClosure, D: LaurentPoly, order: int) -> list[DenPowerFrac]:
    """Multiply the operator output by the prefactor; lift order n to D^{2n+1}."""
    pre = prefactor(c).h_series(order)
    out = []
    for n in range(order + 1):
        acc = DenPowerFrac(LaurentPoly(), D, 2 * n + 1)
        for i in range(n + 1):
            term = raw[n - i]
            if term and pre.coefficient(i):
                acc = acc + term * pre.coefficient(i)
        if acc.power > 2 * n + 1:
            raise DegreeBoundViolated(f"order {n} carries D^{acc.power}")
        out.append(DenPowerFrac(acc._lift(2 * n + 1), D, 2 * n + 1))
    return out


# ---------------------------------------------------------------------------
# Fock engine

class _Amplitudes:
    """h-expanded matrix elements of one crossing after the eps-derivatives."""

    def __init__(self, order: int):
        self.order = order
        self.T = gen_t_polys(max(order, 0))
        self._tvals: dict = {}
        self._cache: dict = {}
        self._pow: dict = {}

    def _tv(self, sign, m1, m2, n):
        key = (sign, m1, m2, n)
        if key not in self._tvals:
            K = self.order
            self._tvals[key] = {(j, s): self.T[(sign, j, s - j)](m1, m2, n)
                                for s in range(K + 1) for j in range(min(n, s) + 1)}
        return self._tvals[key]

    def _base_pow(self, name: str, sign: int, e: int) -> LaurentPoly:
        key = (name, sign, e)
        if key not in self._pow:
            if sign > 0:
                base = LaurentPoly.const(1) - LaurentPoly.var(name, -1)
            else:
                base = LaurentPoly.const(1) - LaurentPoly.var(name)
            self._pow[key] = base ** e
        return self._pow[key]

    def get(self, sign: int, left: str, right: str, m1: int, m2: int, n: int) -> list[LaurentPoly]:
        key = (sign, left, right, m1, m2, n)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        tv = self._tv(sign, m1, m2, n)
        if sign > 0:
            lead = LaurentPoly.monomial({left: -m2}, comb(m1, n))
            basename = right
        else:
            exps = {left: -n}
            exps[right] = exps.get(right, 0) + m1 + n
            lead = LaurentPoly.monomial(exps, comb(m2, n))
            basename = left
        out = []
        for s in range(self.order + 1):
            acc = LaurentPoly()
            for j in range(min(n, s) + 1):
                v = tv[(j, s)]
                if v:
                    acc = acc + self._base_pow(basename, sign, n - j).scale(v * _falling(n, j))
            out.append(acc * lead if acc else acc)
        self._cache[key] = out
        return out


def _series_mul(a: list, b: list, order: int) -> list:
    out = [LaurentPoly()] * (order + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(order + 1 - i):
            if b[j]:
                out[i + j] = out[i + j] + x * b[j]
    return out


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def fock_traces(b: BraidWord, c: LinkClosure, order: int, mmax: int) -> list[list[LaurentPoly]]:
    """traces[M][K]: h^K part of the dressed trace over occupation states of
    total M with nothing on the first position."""
    amp = _Amplitudes(order)
    names = [tvar(j + 1) for j in range(c.L)]
    letters = [(p, s, names[a], names[bb]) for (p, s), (a, bb) in zip(b.letters, c.crossing_components)]
    N = b.strands
    traces = []
    for M in range(mmax + 1):
        tot = [LaurentPoly()] * (order + 1)
        starts = [(0,) + rest for rest in _compositions(M, N - 1)] if N > 1 else ([(M,)] if M == 0 else [])
        for st in starts:
            vec = {st: [LaurentPoly.const(1)] + [LaurentPoly()] * order}
            for p, s, left, right in letters:
                new: dict = {}
                i = p - 1
                for state, ser in vec.items():
                    m1, m2 = state[i], state[i + 1]
                    if s > 0:
                        moves = [((m2 + n, m1 - n), n) for n in range(m1 + 1)]
                    else:
                        moves = [((m2 - n, m1 + n), n) for n in range(m2 + 1)]
                    for (x, y), n in moves:
                        a = amp.get(s, left, right, m1, m2, n)
                        prod = _series_mul(ser, a, order)
                        if not any(prod):
                            continue
                        key = state[:i] + (x, y) + state[i + 2:]
                        if key in new:
                            new[key] = [u + v for u, v in zip(new[key], prod)]
                        else:
                            new[key] = prod
                vec = new
            back = vec.get(st)
            if back:
                tot = [u + v for u, v in zip(tot, back)]
        traces.append(tot)
    return traces


def _operator_output_fock(b: BraidWord, c: LinkClosure, order: int, extra: int = 2):
    """Operator output sum_s h^s R_s, R_s a DenPowerFrac over D = det(1 - Q B)."""
    N = b.strands
    det = _det_lambda(b, c)
    D = sum(det, LaurentPoly())
    bound = 2 * order * (N - 1)
    mmax = bound + extra
    traces = fock_traces(b, c, order, mmax)
    # the occupation weight enters as lambda^{2M}
    delta = _shift_one(_squared(det), order)
    ctab = gen_c_table(order)
    raw = [DenPowerFrac(LaurentPoly(), D, 0) for _ in range(order + 1)]
    for K in range(order + 1):
        r = 2 * K + 1
        f = [traces[M][K] for M in range(mmax + 1)]
        # N_K = F_K * det^r as a truncated lambda-series
        detr = [LaurentPoly.const(1)]
        for _ in range(r):
            detr = _trunc_mul(detr, det, mmax)
        num = _trunc_mul(f, detr, mmax)
        top = 2 * K * (N - 1)
        for d in range(top + 1, mmax + 1):
            if d < len(num) and num[d]:
                raise DegreeBoundViolated(
                    f"order {K}: numerator has a lambda^{d} term beyond degree {top}")
        num = num[: top + 1]
        upto = order - K
        shifted = _shift_one(_squared(num), upto)
        inv = _mu_inverse_power(delta, r, upto)
        for n in range(upto + 1):
            # n! [mu^n] N(1+mu)/det(1+mu)^r, over D^{r+n}
            acc = LaurentPoly()
            for i in range(n + 1):
                if shifted[i] and inv[n - i]:
                    acc = acc + shifted[i] * inv[n - i] * D ** i
            if not acc:
                continue
            val = DenPowerFrac(acc.scale(factorial(n)), D, r + n)
            for k in range(n, order - K + 1):
                cv = ctab.get((k, n))
                if cv:
                    raw[K + k] = raw[K + k] + val * LaurentPoly.const(cv)
    return D, raw


def _trunc_mul(a: Sequence[LaurentPoly], b: Sequence[LaurentPoly], top: int) -> list[LaurentPoly]:
    out = [LaurentPoly()] * (min(len(a) + len(b) - 1, top + 1))
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if i + j > top:
                break
            if y:
                out[i + j] = out[i + j] + x * y
    return out


# ---------------------------------------------------------------------------
# jet engine

def eps_names(letters: int) -> list[str]:
    return [f"e{i}_{l}" for l in range(letters) for i in range(1, 5)]


@dataclass
class ParamBurau:
    """Product of the eps-dressed crossing matrices, entries are jets."""

    names: tuple[str, ...]
    cap: int
    matrix: list[list[EpsJet]]


def _jet_const(names, cap, weights, c) -> EpsJet:
    return EpsJet.constant(names, cap, c, weights)


def param_block(sign: int, tl: LaurentPoly, tr: LaurentPoly, l: int, names, cap, weights) -> list[list[EpsJet]]:
    """Dressed 2x2 crossing block with eps_{1..4} of letter ``l``."""
    one = LaurentPoly.const(1)
    e = [EpsJet.variable(names, cap, f"e{i}_{l}", weights) for i in range(1, 5)]
    zero = _jet_const(names, cap, weights, LaurentPoly())
    if sign > 0:
        return [[(e[0] + e[2]).exp() * (e[3] + (one - tr ** -1)), e[1].exp() * (tl ** -1)],
                [e[0].exp(), zero]]
    return [[zero, e[1].exp()],
            [e[0].exp() * tr, (e[1] + e[2]).exp() * (e[3] + (one - tl)) * (tl ** -1 * tr)]]


def build_param_burau(b: BraidWord, c: LinkClosure | None = None, cap: int = 2,
                      extra_names: Sequence[str] = (), extra_weights: Sequence[int] = ()) -> ParamBurau:
    """Ordered product of dressed blocks; the first letter acts first."""
    c = c or close(b)
    names = tuple(eps_names(len(b.letters))) + tuple(extra_names)
    weights = (1,) * (4 * len(b.letters)) + tuple(extra_weights)
    N = b.strands
    one = _jet_const(names, cap, weights, LaurentPoly.const(1))
    zero = _jet_const(names, cap, weights, LaurentPoly())
    m = [[one if i == j else zero for j in range(N)] for i in range(N)]
    for l, ((p, s), (n1, n2)) in enumerate(zip(b.letters, c.crossing_components)):
        (a, bb), (cc, d) = param_block(s, t(n1 + 1), t(n2 + 1), l, names, cap, weights)
        r0, r1 = m[p - 1], m[p]
        m = [row[:] for row in m]
        m[p - 1] = [a * x + bb * y for x, y in zip(r0, r1)]
        m[p] = [cc * x + d * y for x, y in zip(r0, r1)]
    return ParamBurau(names, cap, m)


def _jet_det(rows: list[list[EpsJet]]) -> EpsJet:
    """Laplace expansion along the first row (the matrices here are small)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = None
    for j in range(n):
        if not rows[0][j].terms:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _jet_det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc if acc is not None else rows[0][0] * 0


def _operator_output_jet(b: BraidWord, c: LinkClosure, order: int):
    """Literal evaluation of D(lambda d_lambda, d_eps; h) 1/det(1 - lambda^2 Q B(eps))."""
    cap = 2 * order
    pb = build_param_burau(b, c, cap, ("mu",), (2,))
    names, N = pb.names, b.strands
    mu = EpsJet.variable(names, cap, "mu", (1,) * (len(names) - 1) + (2,))
    weights = mu.weights
    one = EpsJet.constant(names, cap, LaurentPoly.const(1), weights)
    lam2 = one + mu.scale(2) + mu * mu
    if N == 1:
        det = one
    else:
        rows = [[(one if i == j else one * 0) - lam2 * pb.matrix[i][j] for j in range(1, N)]
                for i in range(1, N)]
        det = _jet_det(rows)
    zero_e = (0,) * len(names)
    D = det.terms.get(zero_e, LaurentPoly())
    if not D:
        raise VanishingAlexander("det(1 - Q B) vanishes")
    rest = det - EpsJet.constant(names, cap, D, weights)
    # 1/det = sum_k (-rest)^k / D^{k+1}
    terms: dict = {}
    power = one
    for k in range(cap + 1):
        for e, v in power.terms.items():
            val = DenPowerFrac(v if k % 2 == 0 else -v, D, k + 1)
            terms[(0, e)] = terms[(0, e)] + val if (0, e) in terms else val
        power = power * rest
        if not power.terms:
            break
    else:
        if power.terms:
            raise JetCapExceeded("geometric series did not terminate within the cap")
    T = gen_t_polys(order)
    for l, (_, s) in enumerate(b.letters):
        base = 4 * l
        new: dict = {}
        for (hp, e), v in terms.items():
            a1, a2, a3, a4 = e[base:base + 4]
            j = a4
            weight = factorial(a1) * factorial(a2) * factorial(a3) * factorial(a4)
            stripped = e[:base] + (0, 0, 0, 0) + e[base + 4:]
            for k in range(order - hp - j + 1):
                poly = T[(s, j, k)] if (s, j, k) in T else None
                if poly is None:
                    continue
                cf = poly.coeffs.get((a1, a2, a3))
                if not cf:
                    continue
                key = (hp + j + k, stripped)
                add = v * LaurentPoly.const(cf * weight)
                new[key] = new[key] + add if key in new else add
        terms = new
    ctab = gen_c_table(order)
    raw = [DenPowerFrac(LaurentPoly(), D, 0) for _ in range(order + 1)]
    for (hp, e), v in terms.items():
        n = e[-1]
        if any(e[:-1]):
            raise JetCapExceeded("eps variables survived the elimination")
        for k in range(n, order - hp + 1):
            cv = ctab.get((k, n))
            if cv:
                raw[hp + k] = raw[hp + k] + v * LaurentPoly.const(cv * factorial(n))
    return D, raw


# ---------------------------------------------------------------------------
# public entry point

def u1rc_series(b: BraidWord, order: int, method: str = "fock") -> U1RCSeries:
    """Coefficients of h*Jhr through h^order."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    c = close(b)
    alex = alexander_conway(b)
    if alex.vanishing:
        raise VanishingAlexander("the Alexander-Conway function vanishes identically")
    if method == "fock":
        D, raw = _operator_output_fock(b, c, order)
    elif method == "jet":
        D, raw = _operator_output_jet(b, c, order)
    else:
        raise ValueError(f"unknown method {method!r}")
    return U1RCSeries(c.L, D, _finish(raw, c, D, order), prefactor(c), alex, b)


def lk_form(c: LinkClosure, x: Sequence[int]) -> Fraction:
    """lk(L; x) = 1/2 sum_{i<j} l_ij x_i x_j."""
    return Fraction(sum(c.lk(i, j) * x[i] * x[j] for i in range(c.L) for j in range(i + 1, c.L)), 2)


def substitute_colors(s: U1RCSeries, alphas: Sequence[int], order: int | None = None) -> HSeries:
    """q^{lk(L; alpha)} Jhr(q^alpha) as an h-Laurent series.

    Order n contributes h^{n-1} P_n(q^alpha) / E(q^alpha)^{2n+1}, where E is
    nabla (L >= 2) or Delta (knots).  When E(q^alpha) does not vanish at
    h = 0 the omitted orders start at h^{s.order} (h^{s.order + 1} for a
    knot, whose numerators carry a factor 1 - t^{-1}), and the result is
    truncated there.  ``order`` lowers the truncation further.
    """
    alphas = [int(a) for a in alphas]
    if len(alphas) != s.L or any(a == 0 for a in alphas):
        raise ValueError("need one nonzero integer per component")
    c = close(s.braid)
    nmax = s.order
    prec = nmax - 1 + (1 if s.L == 1 else 0)
    if order is not None:
        prec = min(prec, order)
    eq = s.nabla_denominator().subst_t_to_qpow(alphas)
    eser = HSeries.from_q_poly(eq, prec + 2)
    v = eser.valuation()
    if v is None or v > 0:
        raise DenominatorVanishesToOrder(
            eser.prec if v is None else v - 1,
            f"the colored Alexander-Conway function vanishes at h = 0 for colors {alphas}"
            f" (valuation {'>' + str(eser.prec) if v is None else v}); the series does not truncate")
    inv = HSeries.from_q_poly(eq, prec + 1).invert()
    inv2 = inv * inv
    invpow = inv
    total = HSeries.zero_series(prec)
    for n in range(nmax + 1):
        if n - 1 > prec:
            break
        num = HSeries.from_q_poly(s.nabla_form(n).subst_t_to_qpow(alphas), prec - n + 1)
        total = total + (num * invpow).shift(n - 1)
        invpow = invpow * inv2
    lk = lk_form(c, alphas)
    qlk = HSeries.binomial(mpq(lk.numerator, lk.denominator), prec + 1)
    return (total * qlk).truncate(prec)
