import math
import warnings

import mpmath
import numpy as np
import pytest

from artifact.specfun import (GammaOverflowWarning, GammaPoleError, MLDomainError, gamma, ml2, ml3, ml_array,
                              rgamma)

def ml_ref(alpha, beta, z, rho=1):
    """Direct summation of the defining series at 400 digits."""
    with mpmath.workdps(400):
        return _ml_ref(alpha, beta, z, rho)


def _ml_ref(alpha, beta, z, rho):
    a, b, r, z = (mpmath.mpf(v) for v in (alpha, beta, rho, z))
    s, m, poch = mpmath.mpf(0), 0, mpmath.mpf(1)
    while True:
        t = poch * z ** m * mpmath.rgamma(a * m + b)
        s += t
        if m > 20 and abs(t) < mpmath.mpf(10) ** -30 * abs(s):
            return float(s)
        poch *= (r + m) / (m + 1)
        m += 1


def test_gamma_known_values():
    assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert gamma(5) == 24
    assert gamma(-0.5) == pytest.approx(-2 * math.sqrt(math.pi), rel=1e-15)


def test_gamma_against_mpmath():
    for x in np.concatenate([np.linspace(-169.7, -0.3, 57), np.linspace(0.1, 170.5, 71)]):
        if x == math.floor(x):
            continue
        want = float(mpmath.gamma(mpmath.mpf(float(x))))
        assert gamma(x) == pytest.approx(want, rel=1e-13)


def test_gamma_poles_and_overflow():
    for x in (0, -1, -7):
        with pytest.raises(GammaPoleError):
            gamma(x)
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        assert gamma(200.0) == math.inf
    assert any(issubclass(i.category, GammaOverflowWarning) for i in w)
    assert rgamma(-3) == 0.0
    assert rgamma(200.0) == pytest.approx(float(mpmath.rgamma(200)), rel=1e-12)


def test_ml2_identities():
    assert ml2(1, 1, 1.0) == pytest.approx(math.e, rel=1e-15)
    assert ml2(2, 1, -1) == pytest.approx(math.cos(1), abs=1e-12)
    assert ml2(0.7, 1.3, 0) == pytest.approx(1 / math.gamma(1.3), rel=1e-15)
    # E_{2,2}(-z^2) = sin z / z, E_{1/2,1}(z) = exp(z^2) erfc(-z)
    assert ml2(2, 2, -4.0) == pytest.approx(math.sin(2) / 2, abs=1e-12)
    for z in (-2.0, -0.5, 0.5, 1.5):
        assert ml2(0.5, 1, z) == pytest.approx(math.exp(z * z) * math.erfc(-z), rel=1e-11)


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7, 1.0, 1.3, 1.8, 2.0])
@pytest.mark.parametrize("beta", [0.5, 1.0, 2.0, 2.7])
def test_ml2_against_series_oracle(alpha, beta):
    for z in (-6.0, -2.5, -0.3, 0.4, 2.0, 5.0):
        assert ml2(alpha, beta, z) == pytest.approx(ml_ref(alpha, beta, z), rel=1e-11, abs=1e-13)


def test_ml3_identities():
    assert ml3(1, 1, 2, 1.0) == pytest.approx(2 * math.e, rel=1e-14)
    assert ml3(0.8, 1.5, 3, 0.0) == pytest.approx(1 / math.gamma(1.5), rel=1e-15)
    for z in (-3.0, 0.0, 1.2):
        assert ml3(0.6, 1.4, 1, z) == pytest.approx(ml2(0.6, 1.4, z), rel=1e-12)


@pytest.mark.parametrize("rho", [0.5, 2.0, 3.0])
def test_ml3_against_series_oracle(rho):
    for alpha, beta in ((0.7, 0.7), (0.7, 1.4), (1.5, 2.0)):
        for z in (-2.0, -0.5, 1.0):
            assert ml3(alpha, beta, rho, z) == pytest.approx(ml_ref(alpha, beta, z, rho), rel=1e-10, abs=1e-13)


def test_recurrence():
    for alpha in (0.4, 0.7, 1.0, 1.5):
        for beta in (0.6, 1.0, 2.0):
            for z in np.linspace(-5, 5, 11):
                lhs = ml2(alpha, beta, z)
                rhs = z * ml2(alpha, alpha + beta, z) + 1 / math.gamma(beta)
                assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))


def test_monotone_on_positive_axis():
    for alpha in (0.5, 1.0, 1.7):
        v = [ml2(alpha, 1, z) for z in np.linspace(0, 10, 60)]
        assert all(b > a for a, b in zip(v, v[1:]))


def test_domain_errors():
    with pytest.raises(MLDomainError, match="asymptotic"):
        ml2(1, 1, 100)
    with pytest.raises(MLDomainError):
        ml2(0, 1, 1)
    with pytest.raises(MLDomainError):
        ml3(1, 1, 0, 1)
    # heavy cancellation for small alpha and large negative z
    with pytest.raises(MLDomainError):
        ml2(0.3, 1, -45)


def test_wide_alpha_warns():
    with pytest.warns(RuntimeWarning):
        ml2(2.5, 1, 0.5)


def test_ml_array_matches_scalar():
    z = np.linspace(-8, 4, 97)
    for alpha, beta, rho in ((0.7, 1, 1), (1.5, 2, 1), (0.7, 0.7, 2)):
        got = ml_array(alpha, beta, z, rho)
        want = np.array([ml3(alpha, beta, rho, v) for v in z])
        np.testing.assert_allclose(got, want, rtol=1e-12, atol=1e-14)
