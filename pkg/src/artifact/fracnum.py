"""Numerical fractional calculus on uniform grids.

caputo_uniform   L1 scheme for the Caputo derivative
fode_oracle      fractional Adams predictor-corrector (PECE), full memory
delay_fode_oracle  the same integrator with a constant-lag term

All sums are O(N^2) over the full history; fine at desk scale.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .specfun import gamma

BLOWUP = 1e12


class GridError(ValueError):
    pass


class BlowUpError(RuntimeError):
    pass


@dataclass(frozen=True)
class UniformGrid:
    h: float
    n_steps: int

    @staticmethod
    def over(T: float, h: float) -> "UniformGrid":
        n = int(round(T / h))
        if n < 1 or abs(n * h - T) > 1e-9 * max(1.0, T):
            raise GridError(f"T={T} is not a whole number of steps h={h}")
        return UniformGrid(h, n)

    @property
    def T(self) -> float:
        return self.h * self.n_steps

    def times(self) -> np.ndarray:
        return np.arange(self.n_steps + 1) * self.h


@dataclass
class Trajectory:
    grid: UniformGrid
    values: np.ndarray      # shape (N+1,) or (N+1, n)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if len(self.values) != self.grid.n_steps + 1:
            raise GridError("trajectory length does not match the grid")

    def times(self) -> np.ndarray:
        return self.grid.times()


def l1_weights(n: int, beta: float) -> np.ndarray:
    """b_j = (j+1)^{1-beta} - j^{1-beta}, j = 0..n-1."""
    j = np.arange(n + 1, dtype=float)
    p = j ** (1.0 - beta)
    return np.diff(p)


def _l1(f: np.ndarray, beta: float, h: float) -> np.ndarray:
    """L1 approximation of the Caputo derivative of order beta in (0,1)."""
    N = len(f) - 1
    df = np.diff(f, axis=0)                  # f_{k} - f_{k-1}, k = 1..N
    b = l1_weights(N, beta)
    out = np.zeros_like(f)
    # D(t_k) = c * sum_{j=0}^{k-1} b_j (f_{k-j} - f_{k-j-1})
    if f.ndim == 1:
        out[1:] = np.convolve(b, df)[:N]
    else:
        for c in range(f.shape[1]):
            out[1:, c] = np.convolve(b, df[:, c])[:N]
    return out * (h ** -beta / gamma(2.0 - beta))


def _central(f: np.ndarray, h: float) -> np.ndarray:
    return np.gradient(f, h, axis=0, edge_order=2)


def caputo_uniform(samples: Trajectory, alpha: float, deriv_samples: Trajectory | None = None) -> Trajectory:
    """Caputo derivative of order alpha in (0, 2] on the samples' grid.

    alpha in (0,1): L1 scheme, order 2 - alpha for smooth f.
    alpha in (1,2): L1 of order alpha - 1 applied to deriv_samples.
    alpha = 1, 2: classical derivative; with deriv_samples, alpha = 1
    returns them and alpha = 2 differences them once.
    The value at t = 0 is left at 0 (the scheme has no information there).
    """
    if not 0 < alpha <= 2:
        raise ValueError(f"alpha must lie in (0, 2], got {alpha}")
    h = samples.grid.h
    f = samples.values
    if alpha > 1 and deriv_samples is None:
        raise ValueError("alpha > 1 needs the analytic first derivative (deriv_samples)")
    if alpha == 1:
        return Trajectory(samples.grid, deriv_samples.values if deriv_samples is not None else _central(f, h))
    if alpha < 1:
        return Trajectory(samples.grid, _l1(f, alpha, h))
    g = deriv_samples.values
    if alpha == 2:
        return Trajectory(samples.grid, _central(g, h))
    return Trajectory(samples.grid, _l1(g, alpha - 1.0, h))


def l1_error_bound(alpha: float, h: float, t, scale: float = 1.0):
    """Truncation estimate for the L1 scheme on a solution with the
    natural t^alpha-type start singularity: scale * (h/t)^r with
    r = min(2 - theta, 1 + theta), theta the order the L1 sum applies."""
    theta = alpha if alpha < 1 else alpha - 1.0
    if theta == 0:
        return scale * (h / np.asarray(t)) ** 2
    r = min(2.0 - theta, 1.0 + theta)
    return scale * (h / np.asarray(t)) ** r


# ---------------------------------------------------------------- PECE

def _pece_weights(alpha: float, N: int):
    i = np.arange(N + 2, dtype=float)
    B = (i + 1) ** alpha - i ** alpha
    A = (i + 2) ** (alpha + 1) + i ** (alpha + 1) - 2 * (i + 1) ** (alpha + 1)
    k = np.arange(N + 1, dtype=float)
    A0 = k ** (alpha + 1) - (k - alpha) * (k + 1) ** alpha
    return B, A, A0


def _integrate(f: Callable, alpha: float, y0, yp0, grid: UniformGrid, delayed: Callable | None = None):
    """Core PECE loop.  f(t, y, yd) where yd is the delayed state (or None)."""
    if not 0 < alpha <= 2:
        raise ValueError(f"alpha must lie in (0, 2], got {alpha}")
    y0 = np.atleast_1d(np.asarray(y0, dtype=float))
    yp0 = np.zeros_like(y0) if yp0 is None else np.atleast_1d(np.asarray(yp0, dtype=float))
    h, N = grid.h, grid.n_steps
    t = grid.times()
    B, A, A0 = _pece_weights(alpha, N)
    cp = h ** alpha / gamma(alpha + 1)
    cc = h ** alpha / gamma(alpha + 2)
    Y = np.zeros((N + 1, len(y0)))
    F = np.zeros_like(Y)
    Y[0] = y0
    F[0] = f(t[0], y0, delayed(0, Y) if delayed else None)
    for k in range(N):
        base = y0 + (t[k + 1] * yp0 if alpha > 1 else 0.0)
        yP = base + cp * (B[k::-1] @ F[:k + 1])
        s = A0[k] * F[0]
        if k >= 1:
            s = s + A[k - 1::-1] @ F[1:k + 1]
        yd = delayed(k + 1, Y) if delayed else None
        Y[k + 1] = base + cc * (f(t[k + 1], yP, yd) + s)
        if not np.all(np.abs(Y[k + 1]) < BLOWUP):
            raise BlowUpError(f"|Phi| exceeded {BLOWUP:g} at t={t[k + 1]:.6g} (step {k + 1})")
        F[k + 1] = f(t[k + 1], Y[k + 1], yd)
    return Y


def fode_oracle(rhs: Callable, alpha: float, init, grid: UniformGrid, init_slope=None) -> Trajectory:
    """Solve D^alpha y = rhs(t, y), y(0) = init (and y'(0) = init_slope for alpha > 1)."""
    if alpha > 1 and init_slope is None:
        raise ValueError("alpha > 1 needs the initial slope")
    scalar = np.ndim(init) == 0
    Y = _integrate(lambda t, y, _: np.atleast_1d(rhs(t, y[0] if scalar else y)), alpha, init, init_slope, grid)
    return Trajectory(grid, Y[:, 0] if scalar else Y)


def delay_fode_oracle(gamma_: float, mu: float, tau: float, alpha: float, history: Callable,
                      init: float, grid: UniformGrid, init_slope: float | None = None) -> Trajectory:
    """D^alpha y = gamma y(t) + mu y(t - tau), y = history on [-tau, 0]."""
    d = tau / grid.h
    nd = int(round(d))
    if nd < 1 or abs(nd - d) > 1e-9 * max(1.0, d):
        raise GridError(f"tau/h = {d} must be a positive integer")
    if alpha > 1 and init_slope is None:
        raise ValueError("alpha > 1 needs the initial slope")
    t = grid.times()
    hist = np.array([history(tk - tau) for tk in t[:nd + 1]], dtype=float)

    def delayed(k, Y):
        return hist[k] if k <= nd else Y[k - nd, 0]

    Y = _integrate(lambda tt, y, yd: gamma_ * y + mu * yd, alpha, init, init_slope, grid, delayed)
    return Trajectory(grid, Y[:, 0])
