import math
import random
from fractions import Fraction as F

import pytest

from artifact.exprparse import parse_expr, parse_kpoly
from artifact.funcalg import (AlgebraError, CanonicalTerm, DependentBasisError, KPoly, RateForm, SymExpr,
                              UnboundSymbolError, coordinates_in_span, diff, eval_expr, expr_mul, term_mul)

x1 = SymExpr.monomial(1, 0)
x2 = SymExpr.monomial(0, 1)


def K(s):
    return parse_kpoly(s)


def random_expr(rng):
    e = SymExpr()
    for _ in range(rng.randint(1, 4)):
        m = SymExpr.monomial(rng.randint(0, 2), rng.randint(0, 2), F(rng.randint(-9, 9), rng.randint(1, 9)))
        if rng.random() < 0.5:
            m = m * SymExpr.exp(rng.choice((1, 2)), F(rng.randint(-3, 3), rng.randint(1, 3)))
        if rng.random() < 0.4:
            m = m * SymExpr.trig(rng.choice(("sin", "cos")), rng.choice((1, 2)), F(rng.randint(1, 4)))
        e = e + m
    return e


# ---- term_mul

def test_term_mul_monomials():
    t = term_mul(CanonicalTerm(1, 0), CanonicalTerm(0, 1))
    assert t == x1 * x2
    assert list(t.terms.values()) == [KPoly.const(1)]


def test_term_mul_exponential_rates_add():
    e = SymExpr.exp(1, K("-a0"))
    (t, c), = expr_mul(e, e).terms.items()
    assert t.r1 == RateForm.make(0, {"a0": -2})
    assert c == KPoly.const(1)


def test_sin_squared_product_to_sum():
    s = SymExpr.trig("sin", 2, K("w"))
    prod = expr_mul(s, s)
    assert prod == SymExpr.const(F(1, 2)) - SymExpr.trig("cos", 2, K("2*w")) * F(1, 2)
    rng = random.Random(3)
    for _ in range(20):
        w, y = rng.uniform(0.1, 3), rng.uniform(-2, 2)
        assert eval_expr(prod, (0.0, y), {"w": w}) == pytest.approx(math.sin(w * y) ** 2, abs=1e-14)


def test_negative_frequency_renormalized():
    assert SymExpr.trig("sin", 1, -2) == -SymExpr.trig("sin", 1, 2)
    assert SymExpr.trig("cos", 1, -2) == SymExpr.trig("cos", 1, 2)
    assert SymExpr.trig("sin", 1, 0).is_zero()
    # sin(w) cos(3w) = (sin 4w - sin 2w)/2
    p = SymExpr.trig("sin", 1, 1) * SymExpr.trig("cos", 1, 3)
    assert p == (SymExpr.trig("sin", 1, 4) - SymExpr.trig("sin", 1, 2)) * F(1, 2)


# ---- expr_mul

def test_zero_absorbs():
    assert expr_mul(SymExpr(), x1 + 3).is_zero()


def test_binomial_square():
    u = SymExpr.const(K("k1")) + x1 * K("k2")
    assert u * u == SymExpr.const(K("k1^2")) + x1 * K("2*k1*k2") + SymExpr.monomial(2, 0, K("k2^2"))


def test_cross_term_against_brute_force_expansion():
    d = [K(f"d{i}") for i in range(1, 4)]
    u = SymExpr.const(d[0]) + x1 * d[1] + x2 * d[2]
    sq = u * u
    # brute force: sum over ordered pairs of the three summands
    parts = [(0, 0, d[0]), (1, 0, d[1]), (0, 1, d[2])]
    expect = SymExpr()
    for p in parts:
        for q in parts:
            expect = expect + SymExpr.monomial(p[0] + q[0], p[1] + q[1], p[2] * q[2])
    assert sq == expect
    assert sq.coefficient(CanonicalTerm(1, 1)) == K("2*d2*d3")


def test_mul_matches_pointwise_product():
    rng = random.Random(11)
    for _ in range(10):
        a, b = random_expr(rng), random_expr(rng)
        ab = a * b
        for _ in range(20):
            pt = (rng.uniform(-1, 1), rng.uniform(-1, 1))
            want = eval_expr(a, pt) * eval_expr(b, pt)
            assert eval_expr(ab, pt) == pytest.approx(want, rel=1e-10, abs=1e-12)


# ---- diff

def test_diff_rules():
    assert diff(SymExpr.monomial(2, 0), 1) == SymExpr.monomial(1, 0, 2)
    e = SymExpr.exp(1, K("-a0"))
    assert diff(e, 1) == e * K("-a0")
    f = SymExpr.exp(2, K("-b0")) * SymExpr.trig("sin", 2, K("w"))
    g = SymExpr.exp(2, K("-b0")) * SymExpr.trig("cos", 2, K("w"))
    assert diff(f, 2) == f * K("-b0") + g * K("w")


def test_mixed_partials_commute():
    rng = random.Random(5)
    for _ in range(15):
        e = random_expr(rng)
        assert diff(diff(e, 1), 2) == diff(diff(e, 2), 1)


def test_diff_bad_axis():
    with pytest.raises(AlgebraError):
        diff(x1, 3)


# ---- eval

def test_eval_examples():
    assert eval_expr(x1 * x2, (2, 3)) == 6
    assert eval_expr(SymExpr.exp(1, K("-a0")), (1, 0), {"a0": 0}) == 1
    h = SymExpr.const(F(1, 2)) - SymExpr.trig("cos", 2, K("2*w")) * F(1, 2)
    assert eval_expr(h, (0, math.pi / 4), {"w": 1}) == pytest.approx(math.sin(math.pi / 4) ** 2, abs=1e-15)


def test_eval_unbound_symbol_named():
    with pytest.raises(UnboundSymbolError, match="a0"):
        eval_expr(SymExpr.exp(1, K("a0")), (1, 1), {})


# ---- coordinates_in_span

BASIS3 = [SymExpr.const(1), x1, x2]


def test_coords_simple():
    coords, res = coordinates_in_span(3 + x1 * 5, BASIS3)
    assert coords == [KPoly.const(3), KPoly.const(5), KPoly()]
    assert res.is_zero()


def test_mixed_term_outside_span():
    coords, res = coordinates_in_span(x1 * x2, BASIS3)
    assert res == x1 * x2


def test_kpoly_coordinates():
    coords, res = coordinates_in_span(x1 * K("k1^2"), [SymExpr.const(1), x1])
    assert coords == [KPoly(), K("k1^2")] and res.is_zero()


def test_reassembly():
    rng = random.Random(2)
    members = [SymExpr.const(1), x1, SymExpr.exp(2, -1), x1 * x2]
    for _ in range(10):
        e = random_expr(rng)
        coords, res = coordinates_in_span(e, members)
        back = SymExpr()
        for c, m in zip(coords, members):
            back = back + m * c
        assert back == e - res


def test_dependent_basis_witness():
    with pytest.raises(DependentBasisError) as ei:
        coordinates_in_span(x1, [x1, x2, x1 * 2 + x2])
    w = ei.value.witness
    combo = x1 * w[0] + x2 * w[1] + (x1 * 2 + x2) * w[2]
    assert combo.is_zero() and any(c != 0 for c in w)


# ---- KPoly and normalization

def test_kpoly_ring_axioms_random():
    rng = random.Random(7)
    names = ["k1", "k2", "a0"]

    def rand_poly():
        p = KPoly()
        for _ in range(4):
            m = KPoly.const(F(rng.randint(-5, 5), rng.randint(1, 5)))
            for n in names:
                m = m * KPoly.var(n, rng.randint(0, 2))
            p = p + m
        return p
    for _ in range(20):
        a, b, c = rand_poly(), rand_poly(), rand_poly()
        assert a + b == b + a and a * b == b * a
        assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        pt = {n: rng.uniform(-2, 2) for n in names}
        assert (a * b).evaluate(pt) == pytest.approx(a.evaluate(pt) * b.evaluate(pt), rel=1e-12, abs=1e-12)


def test_no_zero_coefficients_stored():
    p = K("k1 + k2") - K("k2")
    assert p == K("k1") and len(p.terms) == 1
    e = x1 * K("k1") - x1 * K("k1")
    assert e.is_zero() and not e.terms


def test_normalization_idempotent():
    e = parse_expr("exp(-x1)*(1 + x1) - x1*exp(-x1) + sin(2*x2)^2")
    assert SymExpr(e.terms) == e
    assert SymExpr(SymExpr(e.terms).terms) == SymExpr(e.terms)


def test_numeric_rates_match_within_tolerance():
    a = RateForm.make(0.1 + 0.2)
    b = RateForm.make(0.3)
    assert a == b and hash(a) == hash(b)


def test_term_order_deterministic():
    e = parse_expr("x2 + exp(-x1) + 1 + x1 + sin(x2)")
    s1 = str(e)
    e2 = parse_expr("sin(x2) + x1 + 1 + exp(-x1) + x2")
    assert str(e2) == s1
