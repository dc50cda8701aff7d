"""Exact algebra of closed-class spatial functions.

A SymExpr is a finite sum of terms

    coeff * x1^p1 * x2^p2 * exp(r1*x1 + r2*x2) * osc1(w1*x1) * osc2(w2*x2)

where osc is sin, cos or absent, the rates r and frequencies w are linear
forms over named rate symbols, and coeff is a KPoly (multivariate
polynomial in named indeterminates).  Coefficients are Fractions unless a
float sneaks in, after which the affected values are floats (numeric mode).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Num = Union[Fraction, float]

ZERO_TOL = 1e-12      # zero test for float coefficients
MATCH_DIGITS = 12     # float rates are snapped to this many significant digits
KAPPA_DEGREE_CAP = 8


class AlgebraError(ValueError):
    pass


class UnboundSymbolError(AlgebraError):
    def __init__(self, name: str):
        super().__init__(f"unbound symbol {name!r}")
        self.name = name


class DependentBasisError(AlgebraError):
    def __init__(self, witness):
        super().__init__(f"basis members are linearly dependent; witness {witness}")
        self.witness = witness


def num(x) -> Num:
    """Coerce to Fraction when exact, float otherwise."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return x
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as a coefficient")


def is_zero(c: Num) -> bool:
    if isinstance(c, float):
        return abs(c) <= ZERO_TOL
    return c == 0


def snap(x: float) -> float:
    if x == 0.0:
        return 0.0
    return float(f"{x:.{MATCH_DIGITS}g}")


def fmt_num(c: Num) -> str:
    if isinstance(c, float):
        return repr(snap(c))
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------- KPoly

def _mono_mul(m1: tuple, m2: tuple) -> tuple:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _mono_str(m: tuple) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


class KPoly:
    """Sparse multivariate polynomial, monomial -> coefficient.

    A monomial is a sorted tuple of (name, exponent) pairs; () is the
    constant monomial.
    """
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple, Num] | None = None, _clean: bool = False):
        if _clean:
            self.terms = dict(terms)
        else:
            self.terms = {}
            for m, c in (terms or {}).items():
                c = num(c)
                if not is_zero(c):
                    self.terms[m] = c
        self._hash = None

    @staticmethod
    def const(c) -> "KPoly":
        return KPoly({(): num(c)})

    @staticmethod
    def var(name: str, power: int = 1) -> "KPoly":
        if power == 0:
            return KPoly.const(1)
        return KPoly({((name, power),): Fraction(1)}, _clean=True)

    @staticmethod
    def coerce(x) -> "KPoly":
        if isinstance(x, KPoly):
            return x
        if isinstance(x, str):
            return KPoly.var(x)
        return KPoly.const(x)

    # arithmetic
    def __add__(self, other) -> "KPoly":
        other = KPoly.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
        return KPoly(out, _clean=True)

    __radd__ = __add__

    def __neg__(self) -> "KPoly":
        return KPoly({m: -c for m, c in self.terms.items()}, _clean=True)

    def __sub__(self, other) -> "KPoly":
        return self + (-KPoly.coerce(other))

    def __rsub__(self, other) -> "KPoly":
        return KPoly.coerce(other) - self

    def __mul__(self, other) -> "KPoly":
        other = KPoly.coerce(other)
        if not self.terms or not other.terms:
            return KPoly()
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return KPoly({m: c for m, c in out.items() if not is_zero(c)}, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "KPoly":
        if n < 0:
            raise AlgebraError("negative power of KPoly")
        out = KPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c) -> "KPoly":
        c = num(c)
        if is_zero(c):
            return KPoly()
        return KPoly({m: v * c for m, v in self.terms.items()})

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def const_value(self) -> Num:
        if not self.is_const():
            raise AlgebraError(f"{self} is not constant")
        return self.terms.get((), Fraction(0))

    def is_numeric(self) -> bool:
        return any(isinstance(c, float) for c in self.terms.values())

    def degree(self, vars: Iterable[str] | None = None) -> int:
        if not self.terms:
            return 0
        if vars is None:
            return max(sum(e for _, e in m) for m in self.terms)
        vs = set(vars)
        return max(sum(e for v, e in m if v in vs) for m in self.terms)

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def max_abs(self) -> float:
        return max((abs(float(c)) for c in self.terms.values()), default=0.0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KPoly):
            try:
                other = KPoly.coerce(other)
            except TypeError:
                return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted((m, c) for m, c in self.terms.items())))
        return self._hash

    # transformations
    def evaluate(self, bindings: Mapping[str, float]) -> float:
        total = []
        for m, c in self.terms.items():
            v = float(c)
            for name, e in m:
                if name not in bindings:
                    raise UnboundSymbolError(name)
                v *= float(bindings[name]) ** e
            total.append(v)
        return math.fsum(total)

    def subs(self, bindings: Mapping[str, object]) -> "KPoly":
        """Substitute numbers or KPolys for variables (exact when inputs are)."""
        out = KPoly()
        cache: dict = {}
        for m, c in self.terms.items():
            t = KPoly({(): c}, _clean=True)
            rest = []
            for name, e in m:
                if name in bindings:
                    key = (name, e)
                    if key not in cache:
                        cache[key] = KPoly.coerce(bindings[name]) ** e
                    t = t * cache[key]
                else:
                    rest.append((name, e))
            if rest:
                t = t * KPoly({tuple(rest): Fraction(1)}, _clean=True)
            out = out + t
        return out

    def rename(self, mapping: Mapping[str, str]) -> "KPoly":
        out = {}
        for m, c in self.terms.items():
            d: dict = {}
            for v, e in m:
                v = mapping.get(v, v)
                d[v] = d.get(v, 0) + e
            out[tuple(sorted(d.items()))] = c
        return KPoly(out, _clean=True)

    def diff(self, var: str) -> "KPoly":
        out: dict = {}
        for m, c in self.terms.items():
            for i, (v, e) in enumerate(m):
                if v == var:
                    nm = m[:i] + (((v, e - 1),) if e > 1 else ()) + m[i + 1:]
                    out[nm] = out.get(nm, 0) + c * e
        return KPoly(out)

    def split(self, vars: Iterable[str]) -> dict:
        """Group by the part of each monomial in `vars`; returns {mono: KPoly}."""
        vs = set(vars)
        groups: dict = {}
        for m, c in self.terms.items():
            inner = tuple(p for p in m if p[0] in vs)
            outer = tuple(p for p in m if p[0] not in vs)
            groups.setdefault(inner, {})[outer] = c
        return {k: KPoly(v, _clean=True) for k, v in groups.items()}

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda mc: (-sum(e for _, e in mc[0]), mc[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            if not m:
                parts.append(fmt_num(c))
            elif c == 1:
                parts.append(_mono_str(m))
            elif c == -1:
                parts.append("-" + _mono_str(m))
            else:
                parts.append(f"{fmt_num(c)}*{_mono_str(m)}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


# ---------------------------------------------------------------- rates

@dataclass(frozen=True, eq=False)
class RateForm:
    """c + sum_s a_s * s, with the symbol part stored sorted.

    Float parts keep full precision; equality and hashing use values
    snapped to MATCH_DIGITS so near-identical numeric rates merge.
    """
    constant: Num = Fraction(0)
    symbolic_part: tuple = ()

    def _match(self) -> tuple:
        c = self.constant
        return (snap(c) if isinstance(c, float) else c,
                tuple((k, snap(v) if isinstance(v, float) else v) for k, v in self.symbolic_part))

    def __eq__(self, other) -> bool:
        return isinstance(other, RateForm) and self._match() == other._match()

    def __hash__(self) -> int:
        return hash(self._match())

    @staticmethod
    def make(constant=0, symbolic: Mapping[str, object] | None = None) -> "RateForm":
        c = num(constant)
        if isinstance(c, float) and abs(c) <= ZERO_TOL:
            c = Fraction(0)
        sym = tuple(sorted((k, num(v)) for k, v in (symbolic or {}).items() if not is_zero(num(v))))
        return RateForm(c, sym)

    @staticmethod
    def from_kpoly(p: KPoly) -> "RateForm":
        sym = {}
        const = Fraction(0)
        for m, c in p.terms.items():
            if not m:
                const = c
            elif len(m) == 1 and m[0][1] == 1:
                sym[m[0][0]] = c
            else:
                raise AlgebraError(f"rate {p} is not linear in the rate symbols")
        return RateForm.make(const, sym)

    def is_zero(self) -> bool:
        return not self.symbolic_part and is_zero(self.constant)

    def __add__(self, other: "RateForm") -> "RateForm":
        d = dict(self.symbolic_part)
        for k, v in other.symbolic_part:
            d[k] = d.get(k, 0) + v
        return RateForm.make(self.constant + other.constant, d)

    def __neg__(self) -> "RateForm":
        return RateForm.make(-self.constant, {k: -v for k, v in self.symbolic_part})

    def __sub__(self, other: "RateForm") -> "RateForm":
        return self + (-other)

    def scale(self, c) -> "RateForm":
        c = num(c)
        return RateForm.make(self.constant * c, {k: v * c for k, v in self.symbolic_part})

    def sign(self) -> int:
        """Sign of the leading component (first symbol, else the constant)."""
        lead = self.symbolic_part[0][1] if self.symbolic_part else self.constant
        return (lead > 0) - (lead < 0)

    def to_kpoly(self) -> KPoly:
        p = KPoly.const(self.constant)
        for k, v in self.symbolic_part:
            p = p + KPoly.var(k).scale(v)
        return p

    def evaluate(self, bindings: Mapping[str, float]) -> float:
        v = float(self.constant)
        for k, c in self.symbolic_part:
            if k not in bindings:
                raise UnboundSymbolError(k)
            v += float(c) * float(bindings[k])
        return v

    def subs(self, bindings: Mapping[str, object]) -> "RateForm":
        return RateForm.from_kpoly(self.to_kpoly().subs(bindings))

    def key(self) -> tuple:
        c, sym = self._match()
        return (tuple((k, float(v)) for k, v in sym), float(c))

    def __str__(self) -> str:
        return str(self.to_kpoly())


ZERO_RATE = RateForm()


@dataclass(frozen=True)
class Osc:
    freq: RateForm = ZERO_RATE
    kind: str = "none"   # none | sin | cos

    def key(self) -> tuple:
        return ({"none": 0, "cos": 1, "sin": 2}[self.kind], self.freq.key())


NO_OSC = Osc()


def make_osc(kind: str, freq: RateForm) -> tuple:
    """Canonical (sign, Osc); sign 0 means the factor vanishes (sin 0)."""
    if kind == "none":
        return 1, NO_OSC
    if freq.is_zero():
        return (1, NO_OSC) if kind == "cos" else (0, NO_OSC)
    if freq.sign() < 0:
        return (-1 if kind == "sin" else 1), Osc(-freq, kind)
    return 1, Osc(freq, kind)


_HALF = Fraction(1, 2)


def osc_mul(a: Osc, b: Osc) -> list:
    """Product of two oscillating factors on one axis as [(coeff, Osc)]."""
    if a.kind == "none":
        return [(Fraction(1), b)]
    if b.kind == "none":
        return [(Fraction(1), a)]
    s, d = a.freq + b.freq, a.freq - b.freq
    if a.kind == "sin" and b.kind == "sin":
        raw = [(_HALF, "cos", d), (-_HALF, "cos", s)]
    elif a.kind == "sin":
        raw = [(_HALF, "sin", s), (_HALF, "sin", d)]
    elif b.kind == "sin":
        raw = [(_HALF, "sin", s), (-_HALF, "sin", d)]
    else:
        raw = [(_HALF, "cos", d), (_HALF, "cos", s)]
    out = []
    for c, kind, f in raw:
        sg, o = make_osc(kind, f)
        if sg:
            out.append((c * sg, o))
    return out


@dataclass(frozen=True)
class CanonicalTerm:
    p1: int = 0
    p2: int = 0
    r1: RateForm = ZERO_RATE
    r2: RateForm = ZERO_RATE
    osc1: Osc = NO_OSC
    osc2: Osc = NO_OSC

    def key(self) -> tuple:
        return (self.p1, self.p2, self.r1.key(), self.r2.key(), self.osc1.key(), self.osc2.key())

    def __lt__(self, other: "CanonicalTerm") -> bool:
        return self.key() < other.key()

    def axis(self, i: int) -> tuple:
        return (self.p1, self.r1, self.osc1) if i == 1 else (self.p2, self.r2, self.osc2)

    def with_axis(self, i: int, p: int, r: RateForm, o: Osc) -> "CanonicalTerm":
        if i == 1:
            return CanonicalTerm(p, self.p2, r, self.r2, o, self.osc2)
        return CanonicalTerm(self.p1, p, self.r1, r, self.osc1, o)

    def evaluate(self, x1: float, x2: float, bindings: Mapping[str, float]) -> float:
        v = 1.0
        for x, (p, r, o) in ((x1, self.axis(1)), (x2, self.axis(2))):
            if p:
                v *= x ** p
            if not r.is_zero():
                v *= math.exp(r.evaluate(bindings) * x)
            if o.kind == "sin":
                v *= math.sin(o.freq.evaluate(bindings) * x)
            elif o.kind == "cos":
                v *= math.cos(o.freq.evaluate(bindings) * x)
        return v

    def __str__(self) -> str:
        parts = []
        for name, (p, r, o) in (("x1", self.axis(1)), ("x2", self.axis(2))):
            if p:
                parts.append(name if p == 1 else f"{name}^{p}")
        rate = []
        for name, (p, r, o) in (("x1", self.axis(1)), ("x2", self.axis(2))):
            if not r.is_zero():
                rate.append(f"({r})*{name}")
        if rate:
            parts.append("exp(" + " + ".join(rate) + ")")
        for name, (p, r, o) in (("x1", self.axis(1)), ("x2", self.axis(2))):
            if o.kind != "none":
                parts.append(f"{o.kind}(({o.freq})*{name})")
        return "*".join(parts) if parts else "1"


ONE_TERM = CanonicalTerm()


def term_mul(t1: CanonicalTerm, t2: CanonicalTerm) -> "SymExpr":
    ax1 = osc_mul(t1.osc1, t2.osc1)
    ax2 = osc_mul(t1.osc2, t2.osc2)
    p1, p2 = t1.p1 + t2.p1, t1.p2 + t2.p2
    r1, r2 = t1.r1 + t2.r1, t1.r2 + t2.r2
    out: dict = {}
    for c1, o1 in ax1:
        for c2, o2 in ax2:
            t = CanonicalTerm(p1, p2, r1, r2, o1, o2)
            out[t] = out.get(t, KPoly()) + KPoly.const(c1 * c2)
    return SymExpr(out)


# ---------------------------------------------------------------- SymExpr

class SymExpr:
    """Normalized map CanonicalTerm -> KPoly (no zero coefficients)."""
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[CanonicalTerm, KPoly] | None = None):
        self.terms = {t: c for t, c in (terms or {}).items() if not c.is_zero()}

    @staticmethod
    def const(c) -> "SymExpr":
        return SymExpr({ONE_TERM: KPoly.coerce(c)})

    @staticmethod
    def from_term(t: CanonicalTerm, coeff=1) -> "SymExpr":
        return SymExpr({t: KPoly.coerce(coeff)})

    @staticmethod
    def monomial(p1: int = 0, p2: int = 0, coeff=1) -> "SymExpr":
        return SymExpr.from_term(CanonicalTerm(p1, p2), coeff)

    @staticmethod
    def exp(axis: int, rate) -> "SymExpr":
        r = rate if isinstance(rate, RateForm) else RateForm.from_kpoly(KPoly.coerce(rate))
        return SymExpr.from_term(ONE_TERM.with_axis(axis, 0, r, NO_OSC))

    @staticmethod
    def trig(kind: str, axis: int, freq) -> "SymExpr":
        f = freq if isinstance(freq, RateForm) else RateForm.from_kpoly(KPoly.coerce(freq))
        sg, o = make_osc(kind, f)
        if not sg:
            return SymExpr()
        return SymExpr.from_term(ONE_TERM.with_axis(axis, 0, ZERO_RATE, o), sg)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other) -> "SymExpr":
        other = _coerce_expr(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out[t] + c if t in out else c
        return SymExpr(out)

    __radd__ = __add__

    def __neg__(self) -> "SymExpr":
        return SymExpr({t: -c for t, c in self.terms.items()})

    def __sub__(self, other) -> "SymExpr":
        return self + (-_coerce_expr(other))

    def __rsub__(self, other) -> "SymExpr":
        return _coerce_expr(other) - self

    def __mul__(self, other) -> "SymExpr":
        if isinstance(other, SymExpr):
            return expr_mul(self, other)
        k = KPoly.coerce(other)
        return SymExpr({t: c * k for t, c in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "SymExpr":
        out = SymExpr.const(1)
        for _ in range(n):
            out = expr_mul(out, self)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymExpr):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def sorted_items(self) -> list:
        return sorted(self.terms.items(), key=lambda tc: tc[0].key())

    def coefficient(self, t: CanonicalTerm) -> KPoly:
        return self.terms.get(t, KPoly())

    def map_coeffs(self, f) -> "SymExpr":
        return SymExpr({t: f(c) for t, c in self.terms.items()})

    def kappa_degree(self) -> int:
        return max((c.degree() for c in self.terms.values()), default=0)

    def max_abs(self) -> float:
        return max((c.max_abs() for c in self.terms.values()), default=0.0)

    def subs(self, bindings: Mapping[str, object]) -> "SymExpr":
        """Substitute in coefficients and rates; float bindings give numeric mode."""
        out = SymExpr()
        for t, c in self.terms.items():
            nt = CanonicalTerm(t.p1, t.p2, t.r1.subs(bindings), t.r2.subs(bindings), t.osc1, t.osc2)
            part = SymExpr.from_term(ONE_TERM)
            for i, o in ((1, t.osc1), (2, t.osc2)):
                if o.kind != "none":
                    sg, no = make_osc(o.kind, o.freq.subs(bindings))
                    if not sg:
                        part = SymExpr()
                        break
                    nt = nt.with_axis(i, nt.axis(i)[0], nt.axis(i)[1], no)
                    part = part * sg
            if part.is_zero():
                continue
            out = out + SymExpr.from_term(nt, c.subs(bindings) * part.coefficient(ONE_TERM))
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t, c in self.sorted_items():
            ts = str(t)
            cs = str(c)
            if ts == "1":
                parts.append(cs)
            elif cs == "1":
                parts.append(ts)
            else:
                parts.append(f"({cs})*{ts}")
        return " + ".join(parts)

    __repr__ = __str__


def _coerce_expr(x) -> SymExpr:
    if isinstance(x, SymExpr):
        return x
    return SymExpr.const(x)


def expr_mul(e1: SymExpr, e2: SymExpr) -> SymExpr:
    out: dict = {}
    for t1, c1 in e1.terms.items():
        for t2, c2 in e2.terms.items():
            c = c1 * c2
            if c.is_zero():
                continue
            for t, k in term_mul(t1, t2).terms.items():
                v = c * k
                out[t] = out[t] + v if t in out else v
    return SymExpr(out)


def diff(e: SymExpr, axis: int) -> SymExpr:
    if axis not in (1, 2):
        raise AlgebraError("axis must be 1 or 2")
    out: dict = {}

    def put(t, c):
        out[t] = out[t] + c if t in out else c

    for t, c in e.terms.items():
        p, r, o = t.axis(axis)
        if p:
            put(t.with_axis(axis, p - 1, r, o), c.scale(p))
        if not r.is_zero():
            put(t, c * r.to_kpoly())
        if o.kind == "sin":
            put(t.with_axis(axis, p, r, Osc(o.freq, "cos")), c * o.freq.to_kpoly())
        elif o.kind == "cos":
            put(t.with_axis(axis, p, r, Osc(o.freq, "sin")), -(c * o.freq.to_kpoly()))
    return SymExpr(out)


def eval_expr(e: SymExpr, point: tuple, bindings: Mapping[str, float] | None = None) -> float:
    bindings = bindings or {}
    x1, x2 = point
    return math.fsum(c.evaluate(bindings) * t.evaluate(x1, x2, bindings) for t, c in e.terms.items())


# spec name
eval = eval_expr  # noqa: A001


def coordinates_in_span(e: SymExpr, basis) -> tuple:
    """Coordinates of e in span(basis) and the projection defect.

    basis is a SubspaceBasis or a list of SymExpr whose coefficients are
    constants.  Raises DependentBasisError with a null vector if the members
    are linearly dependent.
    """
    members = list(getattr(basis, "members", basis))
    proj = projector(members)
    rows, pivots_row, E = proj
    b = [e.coefficient(t) for t in rows]
    coords = []
    for r in pivots_row:
        acc = KPoly()
        for k, w in enumerate(E[r]):
            if not is_zero(w) and not b[k].is_zero():
                acc = acc + b[k].scale(w)
        coords.append(acc)
    recon = SymExpr()
    for c, m in zip(coords, members):
        if not c.is_zero():
            recon = recon + m * c
    return coords, e - recon


def projector(members: list) -> tuple:
    """Row-reduce the term/member matrix.

    Returns (row terms, pivot row index per member, E) where E is the
    accumulated row-operation matrix, so coordinate j = E[pivot_j] . b.
    """
    rows = sorted({t for m in members for t in m.terms}, key=lambda t: t.key())
    n, mrows = len(members), len(rows)
    R = []
    for t in rows:
        row = []
        for m in members:
            c = m.coefficient(t)
            if not c.is_const():
                raise AlgebraError("basis members must have constant coefficients")
            row.append(c.const_value())
        R.append(row)
    E = [[Fraction(int(i == j)) for j in range(mrows)] for i in range(mrows)]
    numeric = any(isinstance(v, float) for row in R for v in row)
    scale = max((abs(float(v)) for row in R for v in row), default=1.0) or 1.0
    tol = 1e-12 * scale if numeric else 0
    piv_rows: list = []
    r = 0
    for col in range(n):
        best, best_abs = None, tol
        for i in range(r, mrows):
            a = abs(R[i][col])
            if a > best_abs:
                best, best_abs = i, a
        if best is None:
            w = [Fraction(0)] * n
            w[col] = Fraction(1)
            for k, pr in enumerate(piv_rows):
                w[k] = -R[pr][col]
            raise DependentBasisError(w)
        R[r], R[best] = R[best], R[r]
        E[r], E[best] = E[best], E[r]
        pv = R[r][col]
        R[r] = [v / pv for v in R[r]]
        E[r] = [v / pv for v in E[r]]
        for i in range(mrows):
            if i != r and R[i][col] != 0:
                f = R[i][col]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
                E[i] = [a - f * b for a, b in zip(E[i], E[r])]
        piv_rows.append(r)
        r += 1
    return rows, piv_rows, E
