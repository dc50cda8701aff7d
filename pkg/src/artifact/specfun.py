"""Gamma and Mittag-Leffler functions for real arguments.

ml2 and ml3 sum the defining power series.  There is no asymptotic
continuation, so arguments are restricted to |z| <= Z_MAX.  When the
alternating series cancels badly (sum |t_m| > COND_MAX * |sum t_m|) the
sum is redone in mpmath at a precision that covers the lost digits, up to
MP_MAX_DIGITS of cancellation; beyond that, or when the value does not fit
a double, an MLDomainError is raised instead of returning a poor value.
"""
from __future__ import annotations

import math
import warnings

import mpmath

Z_MAX = 50.0
COND_MAX = 1e5        # allowed sum |t_m| / |sum t_m| before switching to mpmath
ARRAY_COND_MAX = 1e2  # the same for ml_array, whose log-space terms are less exact
REL_STOP = 1e-16
STOP_RUN = 3
MAX_TERMS = 5000
MP_MAX_DIGITS = 400   # cancellation (in decimal digits) the mpmath path accepts
MP_GUARD = 25


class MLDomainError(ValueError):
    pass


class GammaPoleError(ValueError):
    pass


class GammaOverflowWarning(RuntimeWarning):
    pass


def gamma(x: float) -> float:
    """Gamma function; poles raise, overflow gives a signed infinity with a warning."""
    x = float(x)
    if x <= 0 and x == math.floor(x):
        raise GammaPoleError(f"Gamma has a pole at {x}")
    try:
        return math.gamma(x)
    except OverflowError:
        # only reachable for large positive x
        warnings.warn(f"Gamma({x}) overflows", GammaOverflowWarning, stacklevel=2)
        return math.inf
    except ValueError:
        raise GammaPoleError(f"Gamma has a pole at {x}") from None


def rgamma(x: float) -> float:
    """1/Gamma(x), zero at the poles, stable for large x."""
    if x <= 0 and x == math.floor(x):
        return 0.0
    if x < 170.0:
        return 1.0 / math.gamma(x)
    return math.exp(-math.lgamma(x))


def _check_params(alpha: float, beta: float):
    if not alpha > 0 or not beta > 0:
        raise MLDomainError(f"need alpha > 0 and beta > 0, got alpha={alpha}, beta={beta}")
    if alpha > 2:
        warnings.warn(f"alpha={alpha} outside (0, 2]", RuntimeWarning, stacklevel=3)


def _series(alpha: float, beta: float, z: float, rho: float) -> float:
    if abs(z) > Z_MAX:
        raise MLDomainError(f"|z|={abs(z)} exceeds {Z_MAX}; the asymptotic regime is not supported")
    if z == 0.0:
        return rgamma(beta)
    terms = []
    poch = 1.0            # (rho)_m / m!
    logz = math.log(abs(z))
    run = 0
    partial = 0.0
    for m in range(MAX_TERMS):
        arg = alpha * m + beta
        if arg < 170.0 and m * logz < 700.0:
            t = poch * z ** m * rgamma(arg)
        else:
            # logs avoid overflow in either factor; arg > 0 here
            try:
                t = poch * math.copysign(math.exp(m * logz - math.lgamma(arg)), z ** (m % 2))
            except OverflowError:
                return _series_mp(alpha, beta, z, rho)
        terms.append(t)
        partial += t
        if m > 0 and abs(t) < REL_STOP * abs(partial):
            run += 1
            if run >= STOP_RUN:
                break
        else:
            run = 0
        poch *= (rho + m) / (m + 1)
    else:
        raise MLDomainError(f"series did not converge in {MAX_TERMS} terms (z={z})")
    try:
        s = math.fsum(terms)
        gross = math.fsum(abs(t) for t in terms)
    except OverflowError:
        raise MLDomainError(f"value overflows at z={z}") from None
    # error ~ eps * gross; keep it under 1e-11 relative
    if not math.isfinite(gross) or gross > COND_MAX * abs(s):
        return _series_mp(alpha, beta, z, rho)
    return s


def _log10_gross(alpha: float, beta: float, z: float, rho: float) -> float:
    """log10 of the largest series term, found by walking the log terms."""
    best, m, lp = -math.inf, 0, 0.0
    la = math.log(abs(z))
    cap = (MP_MAX_DIGITS + 1) * math.log(10)
    while True:
        v = lp + m * la - math.lgamma(alpha * m + beta)
        best = max(best, v)
        if (m > 5 and v < best - 50) or best > cap:
            return best / math.log(10)
        lp += math.log((rho + m) / (m + 1))
        m += 1


def _series_mp(alpha: float, beta: float, z: float, rho: float) -> float:
    """Extended-precision summation for strongly cancelling series.

    The precision is raised until it exceeds the realised cancellation
    log10(max |t_m| / |sum|) by MP_GUARD digits.
    """
    if z > 0:
        # positive terms: the float path only gives up on overflow
        raise MLDomainError(f"value overflows at z={z}")
    top = _log10_gross(alpha, beta, z, rho)
    lost = max(top, 0.0)
    while True:
        if lost > MP_MAX_DIGITS:
            raise MLDomainError(f"cancellation of ~{lost:.0f} digits at z={z}; "
                                "the asymptotic regime is not supported")
        dps = int(lost) + MP_GUARD
        with mpmath.workdps(dps):
            a, b, r, x = (mpmath.mpf(v) for v in (alpha, beta, rho, z))
            stop = mpmath.mpf(10) ** (-dps)
            total, poch, run, m = mpmath.mpf(0), mpmath.mpf(1), 0, 0
            while True:
                t = poch * x ** m * mpmath.rgamma(a * m + b)
                total += t
                run = run + 1 if m > 0 and abs(t) < stop * abs(total) else 0
                if run >= STOP_RUN:
                    break
                poch *= (r + m) / (m + 1)
                m += 1
            real = top - float(mpmath.log10(abs(total))) if total != 0 else math.inf
        if real + MP_GUARD - 8 <= dps:
            break
        lost = real + 5
    try:
        out = float(total)
    except OverflowError:
        out = math.inf
    if not math.isfinite(out):
        raise MLDomainError(f"value overflows at z={z}")
    return out


def ml2(alpha: float, beta: float, z: float) -> float:
    """E_{alpha,beta}(z) = sum z^m / Gamma(alpha m + beta)."""
    _check_params(alpha, beta)
    return _series(float(alpha), float(beta), float(z), 1.0)


def ml3(alpha: float, beta: float, rho: float, z: float) -> float:
    """E^rho_{alpha,beta}(z) = sum (rho)_m z^m / (m! Gamma(alpha m + beta))."""
    _check_params(alpha, beta)
    if not rho > 0:
        raise MLDomainError(f"need rho > 0, got {rho}")
    return _series(float(alpha), float(beta), float(z), float(rho))


def ml_array(alpha: float, beta: float, z, rho: float = 1.0) -> "np.ndarray":
    """Vectorized E^rho_{alpha,beta}(z) with the same domain policy as ml3.

    Terms are formed in log space; points where the series cancels by
    more than ARRAY_COND_MAX are recomputed with the scalar routine.
    """
    import numpy as np

    _check_params(alpha, beta)
    z = np.asarray(z, dtype=float)
    flat = z.ravel()
    if np.any(np.abs(flat) > Z_MAX):
        raise MLDomainError(f"|z| exceeds {Z_MAX}; the asymptotic regime is not supported")
    with np.errstate(divide="ignore"):
        logz = np.log(np.abs(flat))
    neg = flat < 0
    total = np.zeros_like(flat)
    gross = np.zeros_like(flat)
    comp = np.zeros_like(flat)          # Kahan compensation
    run = np.zeros(flat.shape, dtype=int)
    logpoch = 0.0
    for m in range(MAX_TERMS):
        arg = alpha * m + beta
        if m == 0:
            t = np.full_like(flat, rgamma(arg) * 1.0)
        else:
            with np.errstate(over="raise", invalid="ignore"):
                try:
                    mag = np.exp(m * logz + logpoch - math.lgamma(arg))
                except FloatingPointError:
                    return np.array([_series(alpha, beta, float(v), rho) for v in flat]).reshape(z.shape)
            t = np.where(neg & (m % 2 == 1), -mag, mag)
            t = np.where(flat == 0.0, 0.0, t)
        y = t - comp
        s = total + y
        comp = (s - total) - y
        total = s
        gross = gross + np.abs(t)
        small = np.abs(t) < REL_STOP * np.abs(total)
        run = np.where(small, run + 1, 0)
        if m > 0 and np.all((run >= STOP_RUN) | (flat == 0.0)):
            break
        logpoch += math.log((rho + m) / (m + 1))
    else:
        raise MLDomainError(f"series did not converge in {MAX_TERMS} terms")
    bad = ~np.isfinite(gross) | (gross > ARRAY_COND_MAX * np.abs(total))
    for i in np.flatnonzero(bad):
        total[i] = _series(alpha, beta, float(flat[i]), rho)
    return total.reshape(z.shape)
