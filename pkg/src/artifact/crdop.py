"""Convection-reaction-diffusion operator

    K[u] = sum_i d/dx_i (A_i(u) u_{x_i}) + sum_i B_i(u) u_{x_i} + C(u)

with A_i, B_i, C polynomials in u, expanded as
A_i(u) u_ii + A_i'(u) u_i^2 + B_i(u) u_i + C(u).
"""
from __future__ import annotations

from dataclasses import dataclass

from .funcalg import (KAPPA_DEGREE_CAP, AlgebraError, KPoly, SymExpr, diff,
                      eval_expr, expr_mul)

MAX_UDEG = 4


class DegreeCapError(AlgebraError):
    pass


@dataclass(frozen=True)
class UPoly:
    coeffs: tuple = ()     # KPoly per power of u, trailing zeros trimmed

    @staticmethod
    def make(coeffs) -> "UPoly":
        cs = [KPoly.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        if len(cs) - 1 > MAX_UDEG:
            raise DegreeCapError(f"coefficient polynomial degree {len(cs) - 1} exceeds {MAX_UDEG}")
        return UPoly(tuple(cs))

    @staticmethod
    def from_kpoly(p: KPoly, var: str = "u") -> "UPoly":
        """Split a KPoly in `var` into per-power coefficients."""
        groups = p.split([var])
        deg = max((m[0][1] if m else 0 for m in groups), default=-1)
        cs = [KPoly()] * (deg + 1)
        for m, c in groups.items():
            cs[m[0][1] if m else 0] = c
        return UPoly.make(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def derivative(self) -> "UPoly":
        return UPoly.make([c.scale(k) for k, c in enumerate(self.coeffs)][1:])

    def subs(self, bindings) -> "UPoly":
        return UPoly.make([c.subs(bindings) for c in self.coeffs])

    def eval_kpoly(self, u: KPoly) -> KPoly:
        out = KPoly()
        for c in reversed(self.coeffs):
            out = out * u + c
        return out

    def evaluate(self, u: float, bindings=None) -> float:
        out = 0.0
        for c in reversed(self.coeffs):
            out = out * u + c.evaluate(bindings or {})
        return out

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            u = "" if k == 0 else ("u" if k == 1 else f"u^{k}")
            parts.append(f"({c})*{u}" if u else f"({c})")
        return " + ".join(reversed(parts)) or "0"


ZERO = UPoly()


@dataclass(frozen=True)
class CRDOperator:
    A1: UPoly = ZERO
    A2: UPoly = ZERO
    B1: UPoly = ZERO
    B2: UPoly = ZERO
    C: UPoly = ZERO

    @staticmethod
    def make(A1=(), A2=(), B1=(), B2=(), C=()) -> "CRDOperator":
        f = lambda p: p if isinstance(p, UPoly) else UPoly.make(p)
        return CRDOperator(f(A1), f(A2), f(B1), f(B2), f(C))

    def parts(self) -> dict:
        return {"A1": self.A1, "A2": self.A2, "B1": self.B1, "B2": self.B2, "C": self.C}

    def subs(self, bindings) -> "CRDOperator":
        return CRDOperator(*(p.subs(bindings) for p in self.parts().values()))

    def max_degree(self) -> int:
        return max(p.degree for p in self.parts().values())

    def is_linear(self) -> bool:
        return (self.A1.degree <= 0 and self.A2.degree <= 0 and self.B1.degree <= 0
                and self.B2.degree <= 0 and self.C.degree <= 1)

    def __str__(self) -> str:
        return "; ".join(f"{k}={v}" for k, v in self.parts().items())


class _Powers:
    def __init__(self, u: SymExpr):
        self.p = [SymExpr.const(1), u]

    def get(self, d: int) -> SymExpr:
        while len(self.p) <= d:
            self.p.append(expr_mul(self.p[-1], self.p[1]))
        return self.p[d]


def _check_cap(p: UPoly, u: SymExpr):
    if p.degree > 0 and p.degree * u.kappa_degree() > KAPPA_DEGREE_CAP:
        raise DegreeCapError(f"degree {p.degree} composed with degree {u.kappa_degree()} "
                             f"exceeds the cap {KAPPA_DEGREE_CAP}")


def compose(p: UPoly, u: SymExpr, _powers: _Powers | None = None) -> SymExpr:
    _check_cap(p, u)
    pw = _powers or _Powers(u)
    out = SymExpr()
    for d, c in enumerate(p.coeffs):
        if not c.is_zero():
            out = out + pw.get(d) * c
    return out


def apply_operator(op: CRDOperator, u: SymExpr) -> SymExpr:
    pw = _Powers(u)
    out = compose(op.C, u, pw)
    for A, B, axis in ((op.A1, op.B1, 1), (op.A2, op.B2, 2)):
        ui = diff(u, axis)
        if ui.is_zero():
            continue
        uii = diff(ui, axis)
        if A.degree >= 0:
            out = out + expr_mul(compose(A, u, pw), uii)
        dA = A.derivative()
        if dA.degree >= 0:
            out = out + expr_mul(compose(dA, u, pw), expr_mul(ui, ui))
        if B.degree >= 0:
            out = out + expr_mul(compose(B, u, pw), ui)
    return out


def apply_operator_fd(op: CRDOperator, u: SymExpr, point: tuple, bindings=None, h: float = 1e-4) -> float:
    """Finite-difference evaluation of K[u] at a point, for cross-checks."""
    b = bindings or {}
    x1, x2 = point
    f = lambda a, c: eval_expr(u, (a, c), b)
    total = op.C.evaluate(f(x1, x2), b)
    for A, B, e in ((op.A1, op.B1, (1, 0)), (op.A2, op.B2, (0, 1))):
        def flux(s):
            y1, y2 = x1 + s * e[0], x2 + s * e[1]
            du = (f(y1 + e[0] * h / 2, y2 + e[1] * h / 2) - f(y1 - e[0] * h / 2, y2 - e[1] * h / 2)) / h
            return A.evaluate(f(y1, y2), b) * du
        total += (flux(h / 2) - flux(-h / 2)) / h
        du = (f(x1 + e[0] * h, x2 + e[1] * h) - f(x1 - e[0] * h, x2 - e[1] * h)) / (2 * h)
        total += B.evaluate(f(x1, x2), b) * du
    return total
