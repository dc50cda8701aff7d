import math

import numpy as np
import pytest

from artifact.fracnum import (BlowUpError, GridError, Trajectory, UniformGrid, caputo_uniform, delay_fode_oracle,
                              fode_oracle, l1_error_bound)
from artifact.specfun import ml2


def samples(f, T=1.0, h=1e-3):
    g = UniformGrid.over(T, h)
    return Trajectory(g, f(g.times()))


def test_grid_validation():
    g = UniformGrid.over(2.0, 1e-3)
    assert g.n_steps == 2000 and g.T == pytest.approx(2.0)
    with pytest.raises(GridError):
        UniformGrid.over(1.0, 0.3)
    with pytest.raises(GridError):
        Trajectory(g, np.zeros(5))


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.9, 1.0])
def test_constant_has_zero_derivative(alpha):
    tr = samples(lambda t: np.full_like(t, 3.7))
    assert np.max(np.abs(caputo_uniform(tr, alpha).values)) < 1e-12


def test_linear_function():
    tr = samples(lambda t: t)
    d = caputo_uniform(tr, 0.5).values
    # L1 is exact on linear functions
    assert d[-1] == pytest.approx(2 * math.sqrt(1 / math.pi), abs=1e-12)
    assert d[-1] == pytest.approx(1.1283791671, abs=1e-10)


def l1_error_t2(h):
    tr = samples(lambda t: t ** 2, h=h)
    d = caputo_uniform(tr, 0.5).values
    return abs(d[-1] - math.gamma(3) / math.gamma(2.5))


def test_t_squared_and_slope():
    e = [l1_error_t2(1e-3 / 2 ** k) for k in range(5)]
    assert e[0] <= 5e-4
    slope = np.polyfit(np.log([1e-3 / 2 ** k for k in range(5)]), np.log(e), 1)[0]
    assert slope == pytest.approx(1.5, abs=0.15)


@pytest.mark.parametrize("alpha", [0.3, 0.7])
def test_refinement_order_on_monomial(alpha):
    want = math.gamma(4) / math.gamma(4 - alpha)
    err = []
    for h in (1e-2, 5e-3, 2.5e-3):
        d = caputo_uniform(samples(lambda t: t ** 3, h=h), alpha).values
        err.append(abs(d[-1] - want))
    slopes = np.diff(np.log2(err))
    assert np.all(np.abs(-slopes - (2 - alpha)) < 0.15)


def test_alpha_above_one_uses_derivative():
    g = UniformGrid.over(1.0, 1e-3)
    t = g.times()
    f, fp = Trajectory(g, t ** 3), Trajectory(g, 3 * t ** 2)
    d = caputo_uniform(f, 1.5, fp).values
    want = math.gamma(4) / math.gamma(2.5)
    assert d[-1] == pytest.approx(want, rel=1e-3)
    with pytest.raises(ValueError):
        caputo_uniform(f, 1.5)
    with pytest.raises(ValueError):
        caputo_uniform(f, 2.5, fp)


def test_integer_orders():
    g = UniformGrid.over(1.0, 1e-3)
    t = g.times()
    f = Trajectory(g, np.sin(t))
    d1 = caputo_uniform(f, 1.0).values
    assert np.max(np.abs(d1 - np.cos(t))) < 1e-6
    d2 = caputo_uniform(f, 2.0, Trajectory(g, np.cos(t))).values
    assert np.max(np.abs(d2 - -np.sin(t))) < 1e-6


def test_error_bound_shape():
    b = l1_error_bound(0.5, 1e-3, np.array([0.1, 1.0]))
    assert b[0] > b[1]
    assert l1_error_bound(0.5, 1e-3, 1.0) == pytest.approx(1e-3 ** 1.5)


# ---- PECE

def test_pece_zero_rhs():
    g = UniformGrid.over(1.0, 1e-2)
    tr = fode_oracle(lambda t, y: 0.0, 0.6, 2.5, g)
    assert np.all(tr.values == 2.5)


def test_pece_relaxation_against_ml():
    # the sup-norm error of the scheme at h = 1e-3 is ~6e-6; 1e-6 needs h = 2.5e-4
    t_ref = None
    for h, tol in ((1e-3, 1e-5), (2.5e-4, 1e-6)):
        g = UniformGrid.over(2.0, h)
        tr = fode_oracle(lambda t, y: -y, 0.7, 1.0, g)
        t_ref = g.times()
        want = np.array([ml2(0.7, 1, -s ** 0.7) for s in t_ref])
        assert np.max(np.abs(tr.values - want)) < tol


def test_pece_classical_exponential():
    # second order at alpha = 1: 4.5e-7 at h = 1e-3, 4.5e-9 at h = 1e-4
    g = UniformGrid.over(1.0, 1e-4)
    tr = fode_oracle(lambda t, y: y, 1.0, 1.0, g)
    assert abs(tr.values[-1] - math.e) < 1e-8


def test_pece_wave_regime():
    g = UniformGrid.over(1.0, 1e-3)
    tr = fode_oracle(lambda t, y: -y, 1.5, 1.0, g, init_slope=0.0)
    assert abs(tr.values[-1] - ml2(1.5, 1, -1.0)) < 1e-5
    with pytest.raises(ValueError):
        fode_oracle(lambda t, y: -y, 1.5, 1.0, g)


def test_pece_system_matches_separate_runs():
    g = UniformGrid.over(1.0, 1e-2)
    gam = np.array([-1.0, 0.5])
    joint = fode_oracle(lambda t, y: gam * y, 0.8, [1.0, 2.0], g).values
    a = fode_oracle(lambda t, y: -1.0 * y, 0.8, 1.0, g).values
    b = fode_oracle(lambda t, y: 0.5 * y, 0.8, 2.0, g).values
    assert np.array_equal(joint[:, 0], a) and np.array_equal(joint[:, 1], b)


def test_blow_up_detected():
    g = UniformGrid.over(1.0, 1e-2)
    with pytest.raises(BlowUpError, match="t="):
        fode_oracle(lambda t, y: y ** 3, 0.9, 10.0, g)


# ---- delay oracle

def test_delay_zero_coupling_is_plain_oracle():
    g = UniformGrid.over(2.0, 1e-2)
    a = delay_fode_oracle(-1.0, 0.0, 0.5, 0.7, lambda s: 1.0, 1.0, g).values
    b = fode_oracle(lambda t, y: -y, 0.7, 1.0, g).values
    assert np.array_equal(a, b)


def classical_steps(t):
    # y' = y(t - 1), y = 1 on [-1, 0]
    if t <= 1:
        return 1 + t
    if t <= 2:
        s = t - 1
        return 2 + s + s ** 2 / 2
    s = t - 2
    return 3.5 + 2 * s + s ** 2 / 2 + s ** 3 / 6


def test_delay_classical_method_of_steps():
    g = UniformGrid.over(3.0, 2.5e-4)
    tr = delay_fode_oracle(0.0, 1.0, 1.0, 1.0, lambda s: 1.0, 1.0, g)
    want = np.array([classical_steps(s) for s in g.times()])
    assert np.max(np.abs(tr.values - want)) < 1e-8


def test_delay_rejects_misaligned_lag():
    g = UniformGrid.over(1.0, 0.1)
    with pytest.raises(GridError):
        delay_fode_oracle(-1, 0.3, 0.25, 0.7, lambda s: 1.0, 1.0, g)


def test_delay_causality():
    # changing the history near -tau only touches the first sample read from it
    g = UniformGrid.over(3.0, 1e-2)
    base = delay_fode_oracle(-1, 0.3, 1.0, 0.7, lambda s: 1.0, 1.0, g).values
    bumped = delay_fode_oracle(-1, 0.3, 1.0, 0.7, lambda s: 1.0 + (s < -0.995), 1.0, g).values
    assert np.array_equal(base[:1], bumped[:1])
    assert np.max(np.abs(base - bumped)) > 0
    # a change confined to (-tau + eps, 0) before the grid's first delayed read has no effect
    other = delay_fode_oracle(-1, 0.3, 1.0, 0.7, lambda s: 1.0 + 5.0 * (-0.9999 < s < -0.9951), 1.0, g).values
    assert np.array_equal(base, other)
