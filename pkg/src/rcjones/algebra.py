"""Exact arithmetic: rationals, Laurent polynomials on fractional lattices,
truncated h-series, epsilon jets and quotients by powers of a fixed denominator.

Exponents are stored as integers in scaled units.  A variable whose name
starts with ``t`` lives on the half-integer lattice (scale 2), ``q`` on the
quarter-integer lattice (scale 4); anything else (``A``, ``m1``, ...) is an
ordinary integer-exponent variable.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from typing import Callable, Iterable, Mapping, Sequence

import mpmath
from gmpy2 import mpq

from .errors import (
    AllCoefficientsZero,
    InexactDivision,
    MissingAssignment,
    NonzeroConstantTerm,
)

Rat = mpq
ZERO = mpq(0)
ONE = mpq(1)


def rat(x) -> mpq:
    """Coerce ints, Fractions, mpq and "a/b" strings to an exact rational."""
    if isinstance(x, str):
        return mpq(Fraction(x.strip()))
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or string")
    return mpq(x)


def rat_str(c) -> str:
    c = mpq(c)
    return f"{c.numerator}/{c.denominator}"


def binom_rat(x, k: int) -> mpq:
    """Generalized binomial coefficient x(x-1)...(x-k+1)/k! for rational x."""
    x = mpq(x)
    out = ONE
    for i in range(k):
        out = out * (x - i) / (i + 1)
    return out


# ---------------------------------------------------------------------------
# variables

def var_scale(name: str) -> int:
    if name == "q":
        return 4
    if name.startswith("t"):
        return 2
    return 1


def _var_key(name: str):
    if name.startswith("t") and name[1:].isdigit():
        return (0, int(name[1:]), name)
    if name == "q":
        return (1, 0, name)
    return (2, 0, name)


def sort_vars(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=_var_key))


def tvar(j: int) -> str:
    """Name of the t-variable for (1-based) component j."""
    return f"t{j}"


# ---------------------------------------------------------------------------
# Laurent polynomials

class LaurentPoly:
    """Immutable multivariate Laurent polynomial with rational coefficients.

    The roster only ever contains variables that occur with a nonzero
    exponent, so equal values always have equal rosters and hashes.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str] = (), terms: Mapping[tuple, object] | None = None):
        vars = tuple(vars)
        if terms is None:
            terms = {}
        if sort_vars(vars) != vars:
            order = sort_vars(vars)
            perm = [vars.index(v) for v in order]
            terms = {tuple(e[i] for i in perm): c for e, c in terms.items()}
            vars = order
        clean = {}
        for e, c in terms.items():
            c = mpq(c)
            if c:
                clean[tuple(e)] = clean.get(tuple(e), ZERO) + c
        clean = {e: c for e, c in clean.items() if c}
        self._init_pruned(vars, clean)

    def _init_pruned(self, vars, terms):
        used = [i for i in range(len(vars)) if any(e[i] for e in terms)]
        if len(used) != len(vars):
            vars = tuple(vars[i] for i in used)
            new = {}
            for e, c in terms.items():
                k = tuple(e[i] for i in used)
                new[k] = c  # distinct after pruning: dropped coordinates were all zero
            terms = new
        self.vars = vars
        self.terms = terms
        self._hash = None

    @classmethod
    def _raw(cls, vars, terms) -> "LaurentPoly":
        """Build from already-clean data (sorted roster, no zero coefficients)."""
        obj = cls.__new__(cls)
        obj._init_pruned(vars, terms)
        return obj

    # constructors ---------------------------------------------------------
    @classmethod
    def const(cls, c) -> "LaurentPoly":
        c = rat(c)
        return cls._raw((), {(): c} if c else {})

    @classmethod
    def monomial(cls, exps: Mapping[str, object] | None = None, c=1) -> "LaurentPoly":
        """``c * prod(v**e)`` with true (possibly fractional) exponents ``e``."""
        exps = dict(exps or {})
        names = sort_vars(exps)
        scaled = []
        for v in names:
            k = Fraction(exps[v]) * var_scale(v)
            if k.denominator != 1:
                raise ValueError(f"exponent {exps[v]} of {v} is off its lattice")
            scaled.append(int(k))
        c = rat(c)
        return cls._raw(names, {tuple(scaled): c} if c else {})

    @classmethod
    def var(cls, name: str, power=1) -> "LaurentPoly":
        return cls.monomial({name: power})

    # basic queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.vars

    def constant_value(self) -> mpq:
        if self.vars:
            raise ValueError("not a constant")
        return self.terms.get((), ZERO)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def scales(self) -> tuple[int, ...]:
        return tuple(var_scale(v) for v in self.vars)

    def items(self):
        """Terms sorted canonically (lexicographic on scaled exponents)."""
        return sorted(self.terms.items())

    def exponent(self, e: tuple, name: str) -> Fraction:
        i = self.vars.index(name)
        return Fraction(e[i], var_scale(name))

    def coefficient_denominators(self) -> set[int]:
        return {int(c.denominator) for c in self.terms.values()}

    # alignment --------------------------------------------------------------
    def _on(self, roster: tuple[str, ...]) -> dict:
        if roster == self.vars:
            return self.terms
        idx = [roster.index(v) for v in self.vars]
        n = len(roster)
        out = {}
        for e, c in self.terms.items():
            k = [0] * n
            for i, x in zip(idx, e):
                k[i] = x
            out[tuple(k)] = c
        return out

    @staticmethod
    def _union(a: "LaurentPoly", b: "LaurentPoly") -> tuple[str, ...]:
        if a.vars == b.vars:
            return a.vars
        return sort_vars(a.vars + b.vars)

    @staticmethod
    def _coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        return LaurentPoly.const(x)

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        roster = self._union(self, other)
        out = dict(self._on(roster))
        for e, c in other._on(roster).items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LaurentPoly._raw(roster, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def scale(self, c) -> "LaurentPoly":
        c = rat(c)
        if not c:
            return LaurentPoly()
        return LaurentPoly._raw(self.vars, {e: c * x for e, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        if not self.terms or not other.terms:
            return LaurentPoly()
        roster = self._union(self, other)
        a = self._on(roster)
        b = other._on(roster)
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        n = len(roster)
        if n == 1:
            for (x,), c in a.items():
                for (y,), d in b.items():
                    k = (x + y,)
                    out[k] = get(k, ZERO) + c * d
        elif n == 2:
            for (x0, x1), c in a.items():
                for (y0, y1), d in b.items():
                    k = (x0 + y0, x1 + y1)
                    out[k] = get(k, ZERO) + c * d
        else:
            for e, c in a.items():
                for f, d in b.items():
                    k = tuple(x + y for x, y in zip(e, f))
                    out[k] = get(k, ZERO) + c * d
        return LaurentPoly._raw(roster, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise InexactDivision("negative power of a non-monomial")
            (e, c), = self.terms.items()
            return LaurentPoly._raw(self.vars, {tuple(-x * (-k) for x in e): ONE / c ** (-k)})
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.const(other)
            except TypeError:
                return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # orders and division ----------------------------------------------------
    def leading(self):
        e = max(self.terms)
        return e, self.terms[e]

    def trailing(self):
        e = min(self.terms)
        return e, self.terms[e]

    def degree_box(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Per-variable (min, max) scaled exponents."""
        es = list(self.terms)
        lo = tuple(min(col) for col in zip(*es)) if self.vars else ()
        hi = tuple(max(col) for col in zip(*es)) if self.vars else ()
        return lo, hi

    def unit_inverse(self) -> "LaurentPoly":
        if not self.is_monomial():
            raise InexactDivision("not a unit of the Laurent ring")
        return self ** -1

    def divide_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient ``self / other``; raises InexactDivision on a nonzero remainder."""
        other = self._coerce(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return LaurentPoly()
        if other.is_monomial():
            return self * other.unit_inverse()
        roster = self._union(self, other)
        a = dict(self._on(roster))
        b = other._on(roster)
        n = len(roster)
        alo = [min(e[i] for e in a) for i in range(n)]
        ahi = [max(e[i] for e in a) for i in range(n)]
        blo = [min(e[i] for e in b) for i in range(n)]
        bhi = [max(e[i] for e in b) for i in range(n)]
        qlo = [x - y for x, y in zip(alo, blo)]
        qhi = [x - y for x, y in zip(ahi, bhi)]
        if any(l > h for l, h in zip(qlo, qhi)):
            raise InexactDivision("degree box mismatch")
        lb = max(b)
        lc = b[lb]
        quot = {}
        while a:
            le = max(a)
            e = tuple(x - y for x, y in zip(le, lb))
            if any(x < l or x > h for x, l, h in zip(e, qlo, qhi)):
                raise InexactDivision("nonzero remainder")
            c = a[le] / lc
            quot[e] = c
            for f, d in b.items():
                k = tuple(x + y for x, y in zip(e, f))
                s = a.get(k, ZERO) - c * d
                if s:
                    a[k] = s
                else:
                    a.pop(k, None)
        return LaurentPoly._raw(roster, quot)

    def divides(self, other: "LaurentPoly") -> bool:
        """True if ``self`` divides ``other`` exactly."""
        try:
            lp(other).divide_exact(self)
        except InexactDivision:
            return False
        return True

    # substitutions ------------------------------------------------------------
    def map_exponents(self, roster: tuple[str, ...], fn: Callable[[dict], dict]) -> "LaurentPoly":
        """Rebuild with ``fn`` mapping {var: scaled exp} to a new {var: scaled exp}."""
        acc: dict = {}
        roster = sort_vars(roster)
        for e, c in self.terms.items():
            d = fn(dict(zip(self.vars, e)))
            k = tuple(d.get(v, 0) for v in roster)
            acc[k] = acc.get(k, ZERO) + c
        return LaurentPoly._raw(roster, {e: c for e, c in acc.items() if c})

    def subst_t_to_qpow(self, alphas: Sequence[int]) -> "LaurentPoly":
        """Image under t_j -> q^{alpha_j} (1-based j)."""
        def fn(d):
            out = {}
            qe = d.pop("q", 0)
            for v, x in d.items():
                if v.startswith("t") and v[1:].isdigit():
                    j = int(v[1:])
                    if j > len(alphas):
                        raise MissingAssignment(v)
                    qe += 2 * int(alphas[j - 1]) * x  # x/2 * alpha * 4
                else:
                    out[v] = x
            out["q"] = qe
            return out
        roster = tuple(v for v in self.vars if not (v.startswith("t") and v[1:].isdigit())) + ("q",)
        return self.map_exponents(roster, fn)

    def set_one(self, names: Iterable[str]) -> "LaurentPoly":
        names = set(names)
        keep = tuple(v for v in self.vars if v not in names)
        return self.map_exponents(keep, lambda d: {v: x for v, x in d.items() if v not in names})

    def invert_vars(self, names: Iterable[str] | None = None) -> "LaurentPoly":
        names = set(self.vars if names is None else names)
        return self.map_exponents(self.vars, lambda d: {v: (-x if v in names else x) for v, x in d.items()})

    def rename(self, mapping: Mapping[str, str]) -> "LaurentPoly":
        roster = tuple(mapping.get(v, v) for v in self.vars)
        if len(set(roster)) != len(roster):
            def fn(d):
                out: dict = {}
                for v, x in d.items():
                    w = mapping.get(v, v)
                    out[w] = out.get(w, 0) + x
                return out
        else:
            def fn(d):
                return {mapping.get(v, v): x for v, x in d.items()}
        return self.map_exponents(roster, fn)

    def mul_monomial(self, exps: Mapping[str, int]) -> "LaurentPoly":
        """Multiply by the monomial with the given scaled exponents."""
        return self * LaurentPoly._raw(sort_vars(exps), {tuple(exps[v] for v in sort_vars(exps)): ONE}) \
            if exps else self

    def coefficient_of(self, exps: Mapping[str, object]) -> mpq:
        e = tuple(int(Fraction(exps.get(v, 0)) * var_scale(v)) for v in self.vars)
        return self.terms.get(e, ZERO)

    def eval_rat(self, values: Mapping[str, object]) -> mpq:
        """Exact value when every variable's root (v^{1/scale}) is assigned a rational."""
        total = ZERO
        for e, c in self.terms.items():
            term = c
            for v, x in zip(self.vars, e):
                if v not in values:
                    raise MissingAssignment(v)
                term *= mpq(rat(values[v])) ** x
            total += term
        return total

    def eval_complex(self, assignments: Mapping[str, object], dps: int = 50):
        """Numeric value; ``assignments[v]`` is the value of v^{1/scale(v)}."""
        with mpmath.workdps(max(dps, 50)):
            total = mpmath.mpc(0)
            roots = {}
            for v in self.vars:
                if v not in assignments:
                    raise MissingAssignment(v)
                roots[v] = mpmath.mpmathify(assignments[v])
            for e, c in self.terms.items():
                term = mpmath.mpf(c.numerator) / c.denominator
                for v, x in zip(self.vars, e):
                    term *= roots[v] ** x
                total += term
            return +total

    # serialization ---------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "vars": [{"name": v, "scale": var_scale(v)} for v in self.vars],
            "terms": [{"e": list(e), "c": rat_str(c)} for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentPoly":
        names = [v["name"] for v in data["vars"]]
        for v in data["vars"]:
            if v["scale"] != var_scale(v["name"]):
                raise ValueError(f"unexpected scale for {v['name']}")
        return cls(names, {tuple(t["e"]): rat(t["c"]) for t in data["terms"]})

    def format_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.items():
            mon = " ".join(
                f"{v}^{{{x}/{var_scale(v)}}}" if var_scale(v) > 1 else f"{v}^{{{x}}}"
                for v, x in zip(self.vars, e) if x
            )
            cs = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
            parts.append(f"{cs} * {mon}" if mon else cs)
        return " + ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self.format_text()})"


def lp(x) -> LaurentPoly:
    return LaurentPoly._coerce(x)


def t(j: int, power=1) -> LaurentPoly:
    return LaurentPoly.var(tvar(j), power)


def q(power=1) -> LaurentPoly:
    return LaurentPoly.var("q", power)


def qint(x: int) -> LaurentPoly:
    """Quantum integer [x] = (q^{x/2} - q^{-x/2})/(q^{1/2} - q^{-1/2}) as a Laurent polynomial."""
    x = int(x)
    if x == 0:
        return LaurentPoly()
    sign = 1 if x > 0 else -1
    n = abs(x)
    # [n] = sum_{i=0}^{n-1} q^{(n-1)/2 - i}; exponents in quarter units
    terms = {(2 * (n - 1) - 4 * i,): mpq(sign) for i in range(n)}
    return LaurentPoly._raw(("q",), terms)


def qfactorial(x: int) -> LaurentPoly:
    out = LaurentPoly.const(1)
    for i in range(1, x + 1):
        out = out * qint(i)
    return out


# ---------------------------------------------------------------------------
# determinant over the Laurent ring

def det_bareiss(matrix: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Fraction-free (Bareiss) determinant with exact polynomial division."""
    n = len(matrix)
    if n == 0:
        return LaurentPoly.const(1)
    a = [[lp(x) for x in row] for row in matrix]
    sign = 1
    prev = LaurentPoly.const(1)
    for k in range(n - 1):
        if not a[k][k]:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return LaurentPoly()
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = piv * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = num.divide_exact(prev)
        prev = piv
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def mat_mul(a, b, zero=None):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            s = zero if zero is not None else LaurentPoly()
            for k in range(m):
                x, y = a[i][k], b[k][j]
                if x and y:
                    s = s + x * y
            row.append(s)
        out.append(row)
    return out


def identity(n: int):
    one, zero = LaurentPoly.const(1), LaurentPoly()
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# truncated h-series

class HSeries:
    """Truncated Laurent series sum_{k=low}^{prec} c_k h^k over a commutative ring.

    Coefficients are mpq or LaurentPoly; ``zero`` fixes the ring.
    """

    __slots__ = ("low", "prec", "coeffs", "zero")

    def __init__(self, coeffs: Sequence, low: int = 0, prec: int | None = None, zero=ZERO):
        coeffs = list(coeffs)
        if prec is None:
            prec = low + len(coeffs) - 1
        if prec < low:
            prec = low - 1  # empty window: nothing is known
        width = prec - low + 1
        coeffs = (coeffs + [zero] * width)[:max(width, 0)]
        self.low = low
        self.prec = prec
        self.coeffs = coeffs
        self.zero = zero

    @classmethod
    def zero_series(cls, prec: int, zero=ZERO) -> "HSeries":
        return cls([], 0, prec, zero)

    @classmethod
    def one(cls, prec: int, one=ONE, zero=ZERO) -> "HSeries":
        return cls([one], 0, prec, zero)

    @classmethod
    def binomial(cls, x, prec: int) -> "HSeries":
        """(1+h)^x for rational x."""
        x = rat(x)
        coeffs = []
        c = ONE
        for k in range(prec + 1):
            coeffs.append(c)
            c = c * (x - k) / (k + 1)
        return cls(coeffs, 0, prec)

    @classmethod
    def from_q_poly(cls, p: LaurentPoly, prec: int) -> "HSeries":
        """Expand a Laurent polynomial in q alone as a power series in h = q - 1."""
        if any(v != "q" for v in p.vars):
            raise MissingAssignment(",".join(v for v in p.vars if v != "q"))
        out = [ZERO] * (prec + 1)
        for e, c in p.terms.items():
            x = mpq(e[0], 4) if e else ZERO
            b = c
            for k in range(prec + 1):
                out[k] += b
                b = b * (x - k) / (k + 1)
                if not b:
                    break
        return cls(out, 0, prec)

    def coefficient(self, k: int):
        if k > self.prec:
            raise IndexError(f"h^{k} is beyond the truncation order {self.prec}")
        if k < self.low:
            return self.zero
        return self.coeffs[k - self.low]

    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c:
                return self.low + i
        return None

    def normalized(self) -> "HSeries":
        v = self.valuation()
        if v is None or v == self.low:
            return self
        return HSeries(self.coeffs[v - self.low:], v, self.prec, self.zero)

    def truncate(self, prec: int) -> "HSeries":
        prec = min(prec, self.prec)
        return HSeries(self.coeffs[: prec - self.low + 1], self.low, prec, self.zero)

    def _align(self, other: "HSeries"):
        low = min(self.low, other.low)
        prec = min(self.prec, other.prec)
        return low, prec

    def __add__(self, other):
        if not isinstance(other, HSeries):
            other = HSeries([other], 0, self.prec, self.zero)
        low, prec = self._align(other)
        out = []
        for k in range(low, prec + 1):
            out.append(self.coefficient(k) + other.coefficient(k))
        return HSeries(out, low, prec, self.zero)

    __radd__ = __add__

    def __neg__(self):
        return HSeries([-c for c in self.coeffs], self.low, self.prec, self.zero)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "HSeries":
        return HSeries([x * c for x in self.coeffs], self.low, self.prec, self.zero)

    def shift(self, k: int) -> "HSeries":
        """Multiply by h^k."""
        return HSeries(self.coeffs, self.low + k, self.prec + k, self.zero)

    def __mul__(self, other):
        if not isinstance(other, HSeries):
            return self.scale(other)
        low = self.low + other.low
        prec = min(self.prec + other.low, other.prec + self.low)
        n = prec - low + 1
        out = [self.zero] * max(n, 0)
        for i, a in enumerate(self.coeffs):
            if not a or i >= n:
                continue
            for j, b in enumerate(other.coeffs[: n - i]):
                if b:
                    out[i + j] = out[i + j] + a * b
        return HSeries(out, low, prec, self.zero)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.invert() ** (-k)
        if k == 0:
            one = LaurentPoly.const(1) if isinstance(self.zero, LaurentPoly) else ONE
            return HSeries([one], 0, self.prec - self.low, self.zero)
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def invert(self) -> "HSeries":
        """Multiplicative inverse; the lowest nonzero coefficient must be a unit."""
        s = self.normalized()
        v = s.valuation()
        if v is None:
            raise AllCoefficientsZero(f"series vanishes through h^{self.prec}")
        lead = s.coeffs[0]
        inv_lead = lead.unit_inverse() if isinstance(lead, LaurentPoly) else ONE / lead
        width = s.prec - v  # relative precision
        out = [inv_lead]
        for k in range(1, width + 1):
            acc = self.zero
            for i in range(1, k + 1):
                a = s.coeffs[i]
                if a:
                    acc = acc + a * out[k - i]
            out.append(-(acc * inv_lead))
        return HSeries(out, -v, -v + width, self.zero)

    def __eq__(self, other):
        if not isinstance(other, HSeries):
            return NotImplemented
        low, prec = self._align(other)
        return all(self.coefficient(k) == other.coefficient(k) for k in range(low, prec + 1))

    def __repr__(self):
        body = " + ".join(f"({c})*h^{self.low + i}" for i, c in enumerate(self.coeffs) if c)
        return f"HSeries({body or '0'} + O(h^{self.prec + 1}))"


# ---------------------------------------------------------------------------
# quotients by powers of a fixed denominator

class DenPowerFrac:
    """``num / den**power`` for a fixed nonzero Laurent polynomial ``den``."""

    __slots__ = ("num", "den", "power")

    def __init__(self, num, den: LaurentPoly, power: int = 0):
        if not den:
            raise ZeroDivisionError("zero base denominator")
        self.num = lp(num)
        self.den = den
        self.power = int(power)

    def _lift(self, p: int) -> LaurentPoly:
        return self.num * self.den ** (p - self.power) if p > self.power else self.num

    def _check(self, other: "DenPowerFrac"):
        if self.den != other.den:
            raise ValueError("DenPowerFrac values over different denominators")

    def __add__(self, other):
        if not isinstance(other, DenPowerFrac):
            other = DenPowerFrac(other, self.den, 0)
        self._check(other)
        p = max(self.power, other.power)
        return DenPowerFrac(self._lift(p) + other._lift(p), self.den, p)

    __radd__ = __add__

    def __neg__(self):
        return DenPowerFrac(-self.num, self.den, self.power)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, DenPowerFrac):
            self._check(other)
            return DenPowerFrac(self.num * other.num, self.den, self.power + other.power)
        return DenPowerFrac(self.num * other, self.den, self.power)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.num)

    def normalize(self) -> "DenPowerFrac":
        """Cancel whole factors of ``den`` from the numerator."""
        num, p = self.num, self.power
        if not num:
            return DenPowerFrac(num, self.den, 0)
        while p > 0:
            try:
                num = num.divide_exact(self.den)
            except InexactDivision:
                break
            p -= 1
        return DenPowerFrac(num, self.den, p)

    def same_value(self, other: "DenPowerFrac") -> bool:
        """Cross-multiplied equality, valid across different base denominators."""
        return self.num * other.den ** other.power == other.num * self.den ** self.power

    def __eq__(self, other):
        if not isinstance(other, DenPowerFrac):
            return NotImplemented
        return self.same_value(other)

    __hash__ = None

    def __repr__(self):
        return f"DenPowerFrac(({self.num.format_text()}) / D^{self.power})"


# ---------------------------------------------------------------------------
# epsilon jets

class EpsJet:
    """Truncated polynomial in named variables with weighted-degree cap.

    Each variable carries an integer weight (1 unless stated); monomials whose
    weighted degree exceeds ``cap`` are dropped on multiplication.
    """

    __slots__ = ("names", "weights", "cap", "terms")

    def __init__(self, names: Sequence[str], cap: int, terms: Mapping[tuple, object] | None = None,
                 weights: Sequence[int] | None = None):
        self.names = tuple(names)
        self.weights = tuple(weights) if weights is not None else (1,) * len(self.names)
        self.cap = cap
        self.terms = {}
        for e, c in (terms or {}).items():
            if c and self.degree(e) <= cap:
                self.terms[tuple(e)] = c

    def degree(self, e: tuple) -> int:
        return sum(w * x for w, x in zip(self.weights, e))

    def _new(self, terms) -> "EpsJet":
        obj = EpsJet.__new__(EpsJet)
        obj.names, obj.weights, obj.cap, obj.terms = self.names, self.weights, self.cap, terms
        return obj

    @classmethod
    def constant(cls, names, cap, c, weights=None) -> "EpsJet":
        return cls(names, cap, {(0,) * len(names): c}, weights)

    @classmethod
    def variable(cls, names, cap, name, weights=None, coeff=None) -> "EpsJet":
        e = tuple(1 if v == name else 0 for v in names)
        return cls(names, cap, {e: coeff if coeff is not None else LaurentPoly.const(1)}, weights)

    def constant_term(self):
        return self.terms.get((0,) * len(self.names))

    def __add__(self, other):
        if not isinstance(other, EpsJet):
            other = EpsJet.constant(self.names, self.cap, other, self.weights)
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s:
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "EpsJet":
        return self._new({e: x * c for e, x in self.terms.items() if x * c})

    def __mul__(self, other):
        if not isinstance(other, EpsJet):
            return self.scale(other)
        w, cap = self.weights, self.cap
        da = [(e, c, sum(a * b for a, b in zip(w, e))) for e, c in self.terms.items()]
        db = [(e, c, sum(a * b for a, b in zip(w, e))) for e, c in other.terms.items()]
        out: dict = {}
        for e, c, de in da:
            room = cap - de
            for f, d, df in db:
                if df > room:
                    continue
                k = tuple(x + y for x, y in zip(e, f))
                p = c * d
                if k in out:
                    out[k] = out[k] + p
                else:
                    out[k] = p
        return self._new({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def exp(self, one=None) -> "EpsJet":
        """exp of a jet without constant term, truncated at the cap."""
        c0 = self.constant_term()
        if c0:
            raise NonzeroConstantTerm("jet_exp needs a vanishing constant term")
        one = one if one is not None else LaurentPoly.const(1)
        out = EpsJet.constant(self.names, self.cap, one, self.weights)
        term = out
        k = 1
        while True:
            term = (term * self).scale(mpq(1, k))
            if not term.terms:
                break
            out = out + term
            k += 1
        return out

    def coefficient(self, e: tuple):
        return self.terms.get(tuple(e))

    def __repr__(self):
        return f"EpsJet({len(self.terms)} terms, cap={self.cap})"


def jet_mul(a: EpsJet, b: EpsJet) -> EpsJet:
    return a * b


def jet_exp(j: EpsJet) -> EpsJet:
    return j.exp()


def poly_arith(a: LaurentPoly, b: LaurentPoly, kind: str) -> LaurentPoly:
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "neg":
        return -a
    raise ValueError(kind)


def series_invert(s: HSeries) -> HSeries:
    return s.invert()


def subst_t_to_qpow(p: LaurentPoly, exps: Sequence[int]) -> LaurentPoly:
    return p.subst_t_to_qpow(exps)


def eval_complex(p: LaurentPoly, assignments: Mapping[str, object], dps: int = 50):
    return p.eval_complex(assignments, dps)


# ---------------------------------------------------------------------------
# exact interpolation on tensor grids

def _vandermonde_inverse(nodes: Sequence[int]) -> list[list[mpq]]:
    """Inverse of V[i][k] = nodes[i]**k, so that coeffs = Vinv @ values."""
    n = len(nodes)
    a = [[mpq(x) ** k for k in range(n)] + [mpq(1) if i == j else ZERO for j in range(n)]
         for i, x in enumerate(nodes)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c])
        a[c], a[p] = a[p], a[c]
        inv = ONE / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    # rows of the reduced right half map values -> monomial coefficients
    return [row[n:] for row in a]


def interpolate_tensor(grids: Sequence[Sequence[int]], values: Mapping[tuple, object], zero=ZERO) -> dict:
    """Monomial coefficients {exponent tuple: value} of the unique polynomial
    with deg_i < len(grids[i]) matching ``values`` on the tensor grid."""
    dims = len(grids)
    invs = [_vandermonde_inverse(g) for g in grids]
    # work with index tuples into the grid
    data = {tuple(idx): values[tuple(g[i] for g, i in zip(grids, idx))]
            for idx in iproduct(*[range(len(g)) for g in grids])}
    for axis in range(dims):
        inv = invs[axis]
        n = len(grids[axis])
        new = {}
        for idx in data:
            if idx[axis] != 0:
                continue
            column = [data[idx[:axis] + (i,) + idx[axis + 1:]] for i in range(n)]
            for k in range(n):
                acc = zero
                for i in range(n):
                    if inv[k][i] and column[i]:
                        acc = acc + column[i] * inv[k][i]
                new[idx[:axis] + (k,) + idx[axis + 1:]] = acc
        data = new
    return {e: c for e, c in data.items() if c}


def eval_monomials(coeffs: Mapping[tuple, object], point: Sequence, zero=ZERO):
    acc = zero
    for e, c in coeffs.items():
        term = c
        for x, k in zip(point, e):
            term = term * (mpq(x) ** k)
        acc = acc + term
    return acc
