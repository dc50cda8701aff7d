"""Invariance checks, reduction to fractional ODE systems, determining systems."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .crdop import CRDOperator, UPoly, apply_operator
from .funcalg import (AlgebraError, KPoly, SymExpr, coordinates_in_span, diff,
                      eval_expr, is_zero)
from .subspace import LinearODE, SubspaceBasis

WITNESS_DRAWS = 100


class NotInvariantError(AlgebraError):
    def __init__(self, residual: SymExpr):
        super().__init__(f"subspace is not invariant; residual {residual}")
        self.residual = residual


def kappa(i: int) -> str:
    return f"κ{i}"


def phi(i: int) -> str:
    return f"Φ{i}"


@dataclass
class InvarianceReport:
    invariant: bool
    psi: list
    residual: SymExpr
    witness: dict | None = None
    residual_norm: float = 0.0


@dataclass
class FODESystem:
    equations: list          # KPoly in Φ1..Φn, right-hand sides
    alpha: float | None = None

    def __str__(self) -> str:
        return "\n".join(f"D^a {phi(i + 1)} = {e}" for i, e in enumerate(self.equations))

    def rhs(self):
        """Vectorized numeric right-hand side y -> Psi(y)."""
        names = [phi(i + 1) for i in range(len(self.equations))]
        eqs = self.equations

        def f(t, y):
            b = dict(zip(names, y))
            return np.array([e.evaluate(b) for e in eqs])
        return f


@dataclass
class DeterminingSystem:
    equations: list = field(default_factory=list)    # normalized KPolys, each = 0

    def __len__(self) -> int:
        return len(self.equations)

    def vanishes_at(self, bindings) -> bool:
        return all(e.subs(bindings).is_zero() for e in self.equations)


def trial_function(basis: SubspaceBasis) -> SymExpr:
    u = SymExpr()
    for i, m in enumerate(basis.members):
        u = u + m * KPoly.var(kappa(i + 1))
    return u


def _residual_norm(residual: SymExpr, image: SymExpr) -> float:
    return residual.max_abs() / max(1.0, image.max_abs())


def check_invariance(op: CRDOperator, basis: SubspaceBasis, tol: float = 0.0,
                     seed: int = 0) -> InvarianceReport:
    """tol = 0 demands an exactly vanishing residual (rational mode); in
    numeric mode the residual norm is the largest residual coefficient
    relative to the largest coefficient of K[u]."""
    u = trial_function(basis)
    image = apply_operator(op, u)
    psi, residual = coordinates_in_span(image, basis)
    norm = _residual_norm(residual, image)
    invariant = residual.is_zero() or (tol > 0 and norm <= tol)
    witness = None
    if not invariant:
        witness = find_witness(residual, seed)
    return InvarianceReport(invariant, psi, residual, witness, norm)


def find_witness(residual: SymExpr, seed: int = 0) -> dict | None:
    rng = random.Random(seed)
    names = sorted({v for c in residual.terms.values() for v in c.variables()})
    for _ in range(WITNESS_DRAWS):
        pt = {n: Fraction(rng.choice((-1, 1)) * rng.randint(1, 9), rng.randint(1, 9)) for n in names}
        for c in residual.terms.values():
            if not c.subs(pt).is_zero():
                return pt
    return None


def numeric_invariance_probe(op: CRDOperator, basis: SubspaceBasis, bindings=None,
                             seed: int = 0, draws: int = 3, tol: float = 1e-7) -> bool:
    """Independent numeric verdict: sample K[sum k_m xi_m] pointwise with
    float arithmetic and least-squares project onto the basis samples."""
    b = bindings or {}
    rng = np.random.default_rng(seed)
    n = basis.dimension
    # keep exponents O(1) over the sample box: large rates otherwise spread
    # the samples over dozens of orders of magnitude
    rate = 1.0
    for m in basis.members:
        for t in m.terms:
            for r in (t.r1, t.r2, t.osc1.freq, t.osc2.freq):
                rate = max(rate, abs(r.evaluate(b)))
    half = 1.0 / rate
    pts = rng.uniform(-half, half, size=(4 * n + 8, 2))
    ders = []
    for m in basis.members:
        d1, d2 = diff(m, 1), diff(m, 2)
        ders.append((m, d1, diff(d1, 1), d2, diff(d2, 2)))
    S = np.array([[[eval_expr(f, tuple(p), b) for f in fs] for fs in ders] for p in pts])
    dA1, dA2 = op.A1.derivative(), op.A2.derivative()
    M = S[:, :, 0]
    scale = np.maximum(np.abs(M).max(axis=0), 1e-300)
    for _ in range(draws):
        k = rng.uniform(-2.0, 2.0, size=n)
        u, u1, u11, u2, u22 = (S[:, :, j] @ k for j in range(5))
        K = np.array([
            op.A1.evaluate(u[i], b) * u11[i] + dA1.evaluate(u[i], b) * u1[i] ** 2
            + op.B1.evaluate(u[i], b) * u1[i]
            + op.A2.evaluate(u[i], b) * u22[i] + dA2.evaluate(u[i], b) * u2[i] ** 2
            + op.B2.evaluate(u[i], b) * u2[i] + op.C.evaluate(u[i], b)
            for i in range(len(pts))])
        # row weights equalize the samples; invariance is unaffected
        w = 1.0 / np.maximum(np.maximum(np.abs(M / scale).max(axis=1), np.abs(K)), 1e-300)
        A, y = (M / scale) * w[:, None], K * w
        coef, *_ = np.linalg.lstsq(A, y, rcond=None)
        res = np.linalg.norm(A @ coef - y)
        if res > tol * max(1.0, np.linalg.norm(y)):
            return False
    return True


def reduce_to_fode_system(op: CRDOperator, basis: SubspaceBasis, alpha: float | None = None,
                          tol: float = 0.0) -> FODESystem:
    rep = check_invariance(op, basis, tol)
    if not rep.invariant:
        raise NotInvariantError(rep.residual)
    ren = {kappa(i + 1): phi(i + 1) for i in range(basis.dimension)}
    return FODESystem([p.rename(ren) for p in rep.psi], alpha)


# ---------------------------------------------------------------- determining systems

def normalize_equation(p: KPoly) -> KPoly:
    """Remove content and fix the sign by the leading monomial."""
    if p.is_zero():
        return p
    lead = p.sorted_terms()[0][1]
    if any(isinstance(c, float) for c in p.terms.values()):
        return p.scale(1.0 / float(lead))
    nums = [c.numerator for c in p.terms.values()]
    dens = [c.denominator for c in p.terms.values()]
    g = 0
    for x in nums:
        g = math.gcd(g, x)
    l = 1
    for d in dens:
        l = l * d // math.gcd(l, d)
    s = Fraction(l, g)
    if lead < 0:
        s = -s
    return p.scale(s)


def _collect(polys, split_vars) -> list:
    seen = {}
    for p in polys:
        for c in p.split(split_vars).values():
            q = normalize_equation(c)
            if not q.is_zero():
                seen[q] = q
    return sorted(seen.values(), key=lambda q: str(q))


def _jet(i: int, j: int) -> str:
    return f"u[{i},{j}]"


class _JetSpace:
    """Jets of u on the solution manifold of the generating ODEs."""

    def __init__(self, ode1: LinearODE, ode2: LinearODE, type2: bool):
        self.o = {1: ode1, 2: ode2}
        self.type2 = type2
        n1, n2 = ode1.order, ode2.order
        if type2:
            self.jets = [(i, 0) for i in range(n1)] + [(0, j) for j in range(1, n2)]
        else:
            self.jets = [(i, j) for i in range(n1) for j in range(n2)]
        self.names = [_jet(*ij) for ij in self.jets]
        self._d = {1: {}, 2: {}}
        for axis in (1, 2):
            for ij in self.jets:
                self._d[axis][_jet(*ij)] = self._djet(axis, ij)

    def _djet(self, axis: int, ij: tuple) -> KPoly:
        i, j = ij
        if self.type2 and ((axis == 1 and j > 0) or (axis == 2 and i > 0)):
            return KPoly()
        ni, nj = (i + 1, j) if axis == 1 else (i, j + 1)
        n = self.o[axis].order
        top = ni if axis == 1 else nj
        if top < n:
            return KPoly.var(_jet(ni, nj))
        out = KPoly()
        for k, a in enumerate(self.o[axis].coeffs):
            if a.is_zero():
                continue
            src = (k, j) if axis == 1 else (i, k)
            out = out - a * KPoly.var(_jet(*src))
        return out

    def D(self, axis: int, p: KPoly) -> KPoly:
        out = KPoly()
        for v in p.variables():
            dv = self._d[axis].get(v)
            if dv is None or dv.is_zero():
                continue
            out = out + p.diff(v) * dv
        return out

    def L(self, axis: int, p: KPoly) -> KPoly:
        out = KPoly()
        cur = p
        for a in self.o[axis].coeffs:
            out = out + a * cur
            cur = self.D(axis, cur)
        return out + cur


def _operator_on_jets(op: CRDOperator, js: _JetSpace) -> KPoly:
    u = KPoly.var(_jet(0, 0))
    out = op.C.eval_kpoly(u)
    for A, B, axis in ((op.A1, op.B1, 1), (op.A2, op.B2, 2)):
        ui = js.D(axis, u)
        uii = js.D(axis, ui)
        out = out + A.eval_kpoly(u) * uii + A.derivative().eval_kpoly(u) * ui * ui + B.eval_kpoly(u) * ui
    return out


def determining_system(op: CRDOperator, basis: SubspaceBasis, method: str = "auto") -> DeterminingSystem:
    """Polynomial conditions on the operator coefficients and rate symbols
    for K[V] to lie in V.

    method "jets": conditions L1 K = L2 K = 0 (and D1 D2 K = 0 for Type II)
    on the jet coordinates of V, split by jet monomials.  method "terms":
    coefficients of (term outside span) x (kappa monomial) of the residual.
    """
    for m in basis.members:
        for t in m.terms:
            for o in (t.osc1, t.osc2):
                if o.kind != "none" and o.freq.symbolic_part:
                    raise AlgebraError("trigonometric generators with symbolic frequency: "
                                       "bind the parameters and use numeric mode")
    if method == "auto":
        method = "jets" if basis.kind in ("TypeI", "TypeII") and basis.source else "terms"
    if method == "jets":
        o1, o2 = basis.source
        js = _JetSpace(o1, o2, basis.kind == "TypeII")
        K = _operator_on_jets(op, js)
        conds = [js.L(1, K), js.L(2, K)]
        if js.type2:
            conds.append(js.D(1, js.D(2, K)))
        return DeterminingSystem(_collect(conds, js.names))
    u = trial_function(basis)
    _, residual = coordinates_in_span(apply_operator(op, u), basis)
    kap = [kappa(i + 1) for i in range(basis.dimension)]
    return DeterminingSystem(_collect(residual.terms.values(), kap))


def same_system(a, b) -> bool:
    """Set equality of two equation lists after normalization."""
    na = {normalize_equation(KPoly.coerce(p)) for p in a}
    nb = {normalize_equation(KPoly.coerce(p)) for p in b}
    na.discard(KPoly())
    nb.discard(KPoly())
    return na == nb
