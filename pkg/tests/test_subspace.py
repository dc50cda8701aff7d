import math
from fractions import Fraction as F

import pytest

from artifact.exprparse import parse_expr, parse_kpoly
from artifact.funcalg import DependentBasisError, SymExpr, coordinates_in_span
from artifact.subspace import (LinearODE, SubspaceBasis, SubspaceError, build_type1, build_type2, numeric_independence,
                               ode_basis)

E = parse_expr


def same_set(a, b):
    return len(a) == len(b) and all(any(x == y for y in b) for x in a)


def test_ode_basis_symbolic_rate():
    # D^2 y + a1 D y = 0
    got = ode_basis(LinearODE.make([0, parse_kpoly("a1")], 1))
    assert same_set(got, [E("1"), E("exp(-a1*x1)")])


def test_double_root_at_zero():
    assert same_set(ode_basis(LinearODE.make([0, 0], 1)), [E("1"), E("x1")])


def test_complex_pair_exact_and_numeric():
    got = ode_basis(LinearODE.make([4, 0], 2))
    assert same_set(got, [E("sin(2*x2)"), E("cos(2*x2)")])
    got = ode_basis(LinearODE.make([2, 0], 2))
    assert same_set(got, [E("sin(sqrt(2)*x2)", allow_float=True), E("cos(sqrt(2)*x2)", allow_float=True)])


def test_damped_oscillation():
    # roots -1 +- 2i
    got = ode_basis(LinearODE.make([5, 2], 1))
    assert same_set(got, [E("exp(-x1)*sin(2*x1)"), E("exp(-x1)*cos(2*x1)")])


def test_triple_root_scaled_generators():
    got = ode_basis(LinearODE.make([0, 0, 0], 1))
    assert same_set(got, [E("1"), E("x1"), E("x1^2/2")])


def test_third_order_distinct_rational_roots():
    # (D-1)(D+2)(D-3): D^3 - 2D^2 - 5D + 6
    got = ode_basis(LinearODE.make([6, -5, -2], 1))
    assert same_set(got, [E("exp(x1)"), E("exp(-2*x1)"), E("exp(3*x1)")])


def test_irrational_roots_fall_back_to_numeric():
    # D^2 - 2: roots +- sqrt 2
    got = ode_basis(LinearODE.make([-2, 0], 1))
    r = math.sqrt(2)
    for m in got:
        (t, _), = m.terms.items()
        assert abs(abs(float(t.r1.constant)) - r) < 1e-12


def test_solutions_satisfy_ode():
    from artifact.funcalg import diff
    ode = LinearODE.make([F(5), F(2)], 1)
    for m in ode_basis(ode):
        assert (diff(diff(m, 1), 1) + diff(m, 1) * 2 + m * 5).is_zero()


def test_type1_v4():
    b = build_type1(LinearODE.make([0, 0], 1), LinearODE.make([0, 0], 2))
    assert b.kind == "TypeI" and b.dimension == 4
    assert same_set(b.members, [E("1"), E("x1"), E("x2"), E("x1*x2")])


def test_type1_single_exponential():
    b = build_type1(LinearODE.make([parse_kpoly("a0")], 1), LinearODE.make([parse_kpoly("b0")], 2))
    assert same_set(b.members, [E("exp(-a0*x1 - b0*x2)")])
    b = build_type1(LinearODE.make([0], 1), LinearODE.make([0], 2))
    assert same_set(b.members, [E("1")])


def test_type2_examples():
    b = build_type2(LinearODE.make([0, parse_kpoly("a1")], 1), LinearODE.make([0, parse_kpoly("b1")], 2))
    assert b.dimension == 3 and same_set(b.members, [E("1"), E("exp(-a1*x1)"), E("exp(-b1*x2)")])
    b = build_type2(LinearODE.make([0, 0], 1), LinearODE.make([0, 0], 2))
    assert same_set(b.members, [E("1"), E("x1"), E("x2")])
    b = build_type2(LinearODE.make([0, 0, 0], 1), LinearODE.make([0, 0], 2))
    assert same_set(b.members, [E("1"), E("x1"), E("x1^2/2"), E("x2")])


def test_type2_requires_zero_constant_coefficient():
    with pytest.raises(SubspaceError, match="a_0=b_0=0"):
        build_type2(LinearODE.make([1, 0], 1), LinearODE.make([0, 0], 2))


@pytest.mark.parametrize("o1,o2", [([0, 0], [0, 0]), ([0, 3], [0, -2]), ([0, 0, 0], [0, 4]), ([0, 4, 0], [0, 1])])
def test_dimensions_and_type2_inside_type1(o1, o2):
    a, b = LinearODE.make(o1, 1), LinearODE.make(o2, 2)
    t1, t2 = build_type1(a, b), build_type2(a, b)
    assert t1.dimension == len(o1) * len(o2)
    assert t2.dimension == len(o1) + len(o2) - 1
    for m in t2.members:
        assert coordinates_in_span(m, t1)[1].is_zero()
    assert numeric_independence(t1) and numeric_independence(t2)


def test_dependent_members_rejected():
    with pytest.raises(DependentBasisError):
        SubspaceBasis([E("x1"), E("2*x1")])


def test_order_cap():
    with pytest.raises(SubspaceError):
        LinearODE.make([0, 0, 0, 0, 0], 1)
