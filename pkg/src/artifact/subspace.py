"""Type I / Type II invariant-subspace candidates from two linear ODEs."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from .funcalg import (AlgebraError, CanonicalTerm, KPoly, NO_OSC, ONE_TERM,
                      RateForm, SymExpr, coordinates_in_span, eval_expr,
                      is_zero, make_osc, num)

ROOT_CLUSTER_TOL = 1e-8
MAX_ORDER = 4


class SubspaceError(AlgebraError):
    pass


@dataclass(frozen=True)
class LinearODE:
    """D^n y + a_{n-1} D^{n-1} y + ... + a_0 y = 0 along one axis."""
    order: int
    coeffs: tuple          # a_0 .. a_{n-1}, KPoly each
    axis: int = 1

    @staticmethod
    def make(coeffs, axis: int = 1) -> "LinearODE":
        cs = tuple(KPoly.coerce(c) for c in coeffs)
        if not 1 <= len(cs) <= MAX_ORDER:
            raise SubspaceError(f"ODE order must be 1..{MAX_ORDER}, got {len(cs)}")
        if axis not in (1, 2):
            raise SubspaceError("axis must be 1 or 2")
        return LinearODE(len(cs), cs, axis)

    def is_symbolic(self) -> bool:
        return any(not c.is_const() for c in self.coeffs)

    def subs(self, bindings) -> "LinearODE":
        return LinearODE(self.order, tuple(c.subs(bindings) for c in self.coeffs), self.axis)


@dataclass
class SubspaceBasis:
    members: list
    kind: str = "Custom"            # TypeI | TypeII | Custom
    source: tuple | None = None     # (ode1, ode2)
    side_constraints: list = field(default_factory=list)   # [(w, a)] meaning w^2 = a

    def __post_init__(self):
        if not self.members:
            raise SubspaceError("empty basis")
        # raises DependentBasisError if the members are dependent
        coordinates_in_span(SymExpr(), self.members)
        if self.kind == "TypeII":
            if not any(m == SymExpr.const(1) for m in self.members):
                raise SubspaceError("a Type II basis must contain the constant 1")

    @property
    def dimension(self) -> int:
        return len(self.members)

    def __str__(self) -> str:
        return "{" + ", ".join(str(m) for m in self.members) + "}"


# ---------------------------------------------------------------- roots

def _axis_term(axis: int, p: int, rate: RateForm, kind: str = "none", freq: RateForm | None = None):
    sg, o = make_osc(kind, freq if freq is not None else RateForm())
    t = ONE_TERM.with_axis(axis, p, rate, o)
    return t, sg


def _generator(axis: int, j: int, rate: RateForm, kind: str = "none", freq=None) -> SymExpr:
    """x^j/j! * e^{rate x} * osc(freq x)."""
    t, sg = _axis_term(axis, j, rate, kind, freq)
    return SymExpr.from_term(t, Fraction(sg, math.factorial(j)))


def _rational_roots(coeffs: list) -> tuple:
    """Rational roots (with multiplicity) of the monic polynomial with
    coefficients a_0..a_{n-1}; returns (roots, remaining monic coeffs)."""
    poly = [Fraction(c) for c in coeffs] + [Fraction(1)]   # ascending
    roots = []
    while len(poly) > 1:
        if poly[0] == 0:
            roots.append(Fraction(0))
            poly = poly[1:]
            continue
        lcm = 1
        for c in poly:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        ints = [int(c * lcm) for c in poly]
        found = None
        for p in _divisors(abs(ints[0])):
            for q in _divisors(abs(ints[-1])):
                for s in (1, -1):
                    r = Fraction(s * p, q)
                    if sum(c * r ** k for k, c in enumerate(poly)) == 0:
                        found = r
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        poly = _deflate(poly, found)
    return roots, poly[:-1]


def _divisors(n: int) -> list:
    if n == 0:
        return [1]
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def _deflate(poly: list, r) -> list:
    # synthetic division of ascending poly by (x - r)
    n = len(poly) - 1
    out = [0] * n
    acc = poly[n]
    for k in range(n - 1, -1, -1):
        out[k] = acc
        acc = poly[k] + acc * r
    return out


def _numeric_roots(coeffs: list) -> list:
    """Roots as (value, multiplicity); value is float or complex."""
    asc = [float(c) for c in coeffs] + [1.0]
    raw = np.roots(asc[::-1])
    clusters: list = []
    for z in raw:
        for cl in clusters:
            if abs(cl[0] - z) < ROOT_CLUSTER_TOL:
                cl[1].append(z)
                break
        else:
            clusters.append([z, [z]])
    out = []
    for _, zs in clusters:
        z = complex(np.mean(zs))
        if abs(z.imag) < ROOT_CLUSTER_TOL:
            z = z.real
        out.append((z, len(zs)))
    return out


def _members_from_roots(axis: int, roots: list) -> list:
    """roots: list of (value, multiplicity), value Fraction/float/complex."""
    real = sorted([(r, m) for r, m in roots if not isinstance(r, complex)],
                  key=lambda rm: (rm[0] != 0, float(rm[0])))
    cplx = sorted([(r, m) for r, m in roots if isinstance(r, complex) and r.imag > 0],
                  key=lambda rm: (rm[0].real, rm[0].imag))
    out = []
    for r, m in real:
        rate = RateForm.make(r)
        out += [_generator(axis, j, rate) for j in range(m)]
    for z, m in cplx:
        rate = RateForm.make(z.real)
        q = RateForm.make(z.imag)
        for j in range(m):
            out += [_generator(axis, j, rate, "sin", q), _generator(axis, j, rate, "cos", q)]
    return out


def _ode_basis(ode: LinearODE, fresh: str = "w") -> tuple:
    ax = ode.axis
    cs = ode.coeffs
    if ode.is_symbolic():
        k = 0
        while k < ode.order and cs[k].is_zero():
            k += 1
        zero = [_generator(ax, j, RateForm()) for j in range(k)]
        rest = ode.order - k
        if rest == 0:
            return zero, []
        if rest == 1:
            return zero + [_generator(ax, 0, RateForm.from_kpoly(-cs[k]))], []
        if rest == 2 and cs[k + 1].is_zero():
            a = cs[k]
            name = fresh + "_" + "_".join(sorted(a.variables()))
            w = RateForm.make(0, {name: 1})
            return zero + [_generator(ax, 0, RateForm(), "sin", w),
                           _generator(ax, 0, RateForm(), "cos", w)], [(name, a)]
        raise SubspaceError("symbolic ODE coefficients supported only for roots linear in the symbols; "
                            "bind the coefficients (numeric mode)")
    vals = [c.const_value() for c in cs]
    if all(isinstance(v, Fraction) for v in vals):
        rr, rest = _rational_roots(vals)
        roots: dict = {}
        for r in rr:
            roots[r] = roots.get(r, 0) + 1
        out_roots = list(roots.items())
        if len(rest) == 2:
            c0, c1 = rest
            disc = c1 * c1 - 4 * c0
            if disc < 0:
                p = -c1 / 2
                q = _sqrt_exact_or_float(-disc) / 2
                out_roots.append((complex(float(p), float(q)), 1))
                return _members_exact_complex(ax, out_roots, p, q), []
            # positive non-square discriminant: irrational real pair
            out_roots += [(-float(c1) / 2 + math.sqrt(float(disc)) / 2, 1),
                          (-float(c1) / 2 - math.sqrt(float(disc)) / 2, 1)]
        elif len(rest) > 2:
            out_roots += _numeric_roots(rest)
        elif len(rest) == 1:
            out_roots.append((-rest[0], 1))
        return _members_from_roots(ax, out_roots), []
    return _members_from_roots(ax, _numeric_roots(vals)), []


def _sqrt_exact_or_float(x: Fraction):
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return math.sqrt(float(x))


def _members_exact_complex(ax: int, roots: list, p, q) -> list:
    # keep the real part exact when possible
    real = [(r, m) for r, m in roots if not isinstance(r, complex)]
    out = _members_from_roots(ax, real)
    rate, freq = RateForm.make(p), RateForm.make(q)
    out += [_generator(ax, 0, rate, "sin", freq), _generator(ax, 0, rate, "cos", freq)]
    return out


def ode_basis(ode: LinearODE) -> list:
    return _ode_basis(ode)[0]


def build_type1(ode1: LinearODE, ode2: LinearODE) -> SubspaceBasis:
    v, c1 = _ode_basis(_on_axis(ode1, 1), "w")
    z, c2 = _ode_basis(_on_axis(ode2, 2), "q")
    members = [a * b for a, b in product(v, z)]
    return SubspaceBasis(members, "TypeI", (ode1, ode2), c1 + c2)


def build_type2(ode1: LinearODE, ode2: LinearODE) -> SubspaceBasis:
    if not ode1.coeffs[0].is_zero() or not ode2.coeffs[0].is_zero():
        raise SubspaceError("Type II subspace requires a_0=b_0=0 in both ODEs")
    one = SymExpr.const(1)
    v, c1 = _ode_basis(_on_axis(ode1, 1), "w")
    z, c2 = _ode_basis(_on_axis(ode2, 2), "q")
    members = [one] + [m for m in v if m != one] + [m for m in z if m != one]
    return SubspaceBasis(members, "TypeII", (ode1, ode2), c1 + c2)


def _on_axis(ode: LinearODE, axis: int) -> LinearODE:
    return ode if ode.axis == axis else LinearODE(ode.order, ode.coeffs, axis)


def numeric_independence(basis: SubspaceBasis, bindings=None, seed: int = 0, tol: float = 1e-8) -> bool:
    """Collocation check: members sampled at random points have full rank."""
    rng = random.Random(seed)
    n = basis.dimension
    pts = [(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(3 * n + 4)]
    M = np.array([[eval_expr(m, p, bindings or {}) for m in basis.members] for p in pts])
    M = M / np.maximum(np.abs(M).max(axis=0), 1e-300)
    s = np.linalg.svd(M, compute_uv=False)
    return bool(s[-1] > tol * s[0])
