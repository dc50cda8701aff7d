"""Parser for the corpus expression grammar.

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := ('+'|'-') factor | atom ('^' int)?
    atom   := number | p/q | symbol | '(' expr ')' | fn '(' expr ')'
    fn     := exp | sin | cos | sqrt

Symbols are identifiers; x1 and x2 are the spatial variables.  Python's
``ast`` does the tokenizing after '^' is rewritten to '**'.
"""
from __future__ import annotations

import ast
import math
from fractions import Fraction
from typing import Mapping

from .funcalg import (AlgebraError, CanonicalTerm, KPoly, ONE_TERM, RateForm,
                      SymExpr, num)

SPATIAL = ("x1", "x2")
FUNCS = ("exp", "sin", "cos", "sqrt")


class ParseError(ValueError):
    pass


def _tree(text: str) -> ast.AST:
    if not isinstance(text, str):
        text = str(text)
    try:
        return ast.parse(text.strip().replace("^", "**"), mode="eval").body
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None


def exact_sqrt(c, allow_float: bool):
    c = num(c)
    if isinstance(c, Fraction) and c >= 0:
        n, d = math.isqrt(c.numerator), math.isqrt(c.denominator)
        if n * n == c.numerator and d * d == c.denominator:
            return Fraction(n, d)
    if c < 0:
        raise ParseError(f"sqrt of negative value {c}")
    if not allow_float:
        raise ParseError(f"sqrt({c}) is irrational; use numeric mode")
    return math.sqrt(float(c))


class _Walker:
    def __init__(self, bindings: Mapping[str, object], allow_float: bool, spatial: bool):
        self.b = bindings
        self.allow_float = allow_float
        self.spatial = spatial

    def const_of(self, e: SymExpr, what: str):
        if not e.terms:
            return Fraction(0)
        if set(e.terms) != {ONE_TERM} or not e.terms[ONE_TERM].is_const():
            raise ParseError(f"{what} must be a numeric constant, got {e}")
        return e.terms[ONE_TERM].const_value()

    def visit(self, node) -> SymExpr:
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
                raise ParseError(f"bad literal {node.value!r}")
            v = node.value
            return SymExpr.const(Fraction(repr(v)) if isinstance(v, float) else Fraction(v))
        if isinstance(node, ast.Name):
            name = node.id
            if name in SPATIAL:
                if not self.spatial:
                    raise ParseError(f"spatial variable {name} not allowed here")
                return SymExpr.monomial(1, 0) if name == "x1" else SymExpr.monomial(0, 1)
            if name in self.b:
                v = self.b[name]
                return SymExpr.const(v if isinstance(v, KPoly) else num(v))
            return SymExpr.const(KPoly.var(name))
        if isinstance(node, ast.UnaryOp):
            v = self.visit(node.operand)
            if isinstance(node.op, ast.USub):
                return -v
            if isinstance(node.op, ast.UAdd):
                return v
        if isinstance(node, ast.BinOp):
            a = self.visit(node.left)
            if isinstance(node.op, ast.Pow):
                return self.power(a, node.right)
            b = self.visit(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                d = self.const_of(b, "denominator")
                if d == 0:
                    raise ParseError("division by zero")
                return a * (1 / d)
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
            fn = node.func.id
            if fn not in FUNCS or len(node.args) != 1 or node.keywords:
                raise ParseError(f"unknown function {fn}")
            arg = self.visit(node.args[0])
            if fn == "sqrt":
                return SymExpr.const(exact_sqrt(self.const_of(arg, "sqrt argument"), self.allow_float))
            return self.transcendental(fn, arg)
        raise ParseError(f"unsupported syntax: {ast.dump(node)}")

    def power(self, a: SymExpr, right) -> SymExpr:
        ev = self.visit(right)
        p = self.const_of(ev, "exponent")
        if p == Fraction(1, 2):
            return SymExpr.const(exact_sqrt(self.const_of(a, "sqrt argument"), self.allow_float))
        if isinstance(p, float) or p.denominator != 1 or p < 0:
            raise ParseError(f"exponent must be a non-negative integer, got {p}")
        return a ** int(p)

    def transcendental(self, fn: str, arg: SymExpr) -> SymExpr:
        rates = {1: KPoly(), 2: KPoly()}
        for t, c in arg.terms.items():
            if t == CanonicalTerm(1, 0):
                rates[1] = rates[1] + c
            elif t == CanonicalTerm(0, 1):
                rates[2] = rates[2] + c
            elif t == ONE_TERM and fn == "exp":
                raise ParseError("exp of a constant is not a closed-class term; fold it into the coefficient")
            else:
                raise ParseError(f"{fn} argument must be linear in x1, x2: {arg}")
        try:
            r1, r2 = RateForm.from_kpoly(rates[1]), RateForm.from_kpoly(rates[2])
        except AlgebraError as exc:
            raise ParseError(str(exc)) from None
        if fn == "exp":
            return SymExpr.from_term(CanonicalTerm(0, 0, r1, r2))
        if not r1.is_zero() and not r2.is_zero():
            raise ParseError(f"{fn} argument must involve a single axis")
        axis = 1 if not r1.is_zero() else 2
        return SymExpr.trig(fn, axis, r1 if axis == 1 else r2)


def parse_expr(text, bindings: Mapping[str, object] | None = None, allow_float: bool = False) -> SymExpr:
    """Parse a spatial expression into a SymExpr."""
    return _Walker(bindings or {}, allow_float, True).visit(_tree(text))


def parse_kpoly(text, bindings: Mapping[str, object] | None = None, allow_float: bool = False) -> KPoly:
    """Parse a polynomial in named symbols (no x1, x2)."""
    e = _Walker(bindings or {}, allow_float, False).visit(_tree(text))
    if not e.terms:
        return KPoly()
    if set(e.terms) != {ONE_TERM}:
        raise ParseError(f"{text!r} is not a polynomial")
    return e.terms[ONE_TERM]


def parse_number(text, bindings: Mapping[str, object] | None = None, allow_float: bool = True):
    p = parse_kpoly(text, bindings, allow_float)
    if not p.is_const():
        raise ParseError(f"unbound symbols {sorted(p.variables())} in {text!r}")
    return p.const_value()


def symbols_in(text) -> set:
    names = {n.id for n in ast.walk(_tree(text)) if isinstance(n, ast.Name)}
    return names - set(SPATIAL) - set(FUNCS)
