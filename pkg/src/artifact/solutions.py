"""Closed-form time profiles, assembled space-time solutions, and their
numerical verification (residual and initial-condition checks)."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from .crdop import CRDOperator, apply_operator
from .fracnum import Trajectory, UniformGrid, caputo_uniform
from .funcalg import KPoly, SymExpr, coordinates_in_span, eval_expr
from .invariance import kappa, trial_function
from .specfun import gamma, ml2, ml_array
from .subspace import SubspaceBasis

MIN_STEPS = 64


class QuadratureError(RuntimeError):
    pass


class DelaySmallnessWarning(UserWarning):
    pass


def _exact(x):
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return Fraction(x)
    return float(x)


# ---------------------------------------------------------------- profiles

class TimeProfile:
    kind = "abstract"
    alpha: float

    def value(self, t) -> np.ndarray:
        raise NotImplementedError

    def derivative(self, t) -> np.ndarray:
        raise NotImplementedError(f"{self.kind} profile has no analytic derivative")

    def initial_value(self):
        raise NotImplementedError

    def initial_slope(self):
        raise NotImplementedError

    def describe(self) -> str:
        return self.kind


@dataclass
class MLLinear(TimeProfile):
    """nu E_{a,1}(g t^a) (+ t mu E_{a,2}(g t^a) for a > 1)."""
    gamma: float
    alpha: float
    nu: object
    mu: object = 0
    kind = "ML_linear"

    def value(self, t):
        t = np.asarray(t, dtype=float)
        z = self.gamma * t ** self.alpha
        out = float(self.nu) * ml_array(self.alpha, 1.0, z)
        if self.alpha > 1 and self.mu:
            out = out + float(self.mu) * t * ml_array(self.alpha, 2.0, z)
        return out

    def derivative(self, t):
        # d/dt E_{a,1}(g t^a) = g t^{a-1} E_{a,a}(g t^a);  d/dt [t E_{a,2}(g t^a)] = E_{a,1}(g t^a)
        t = np.asarray(t, dtype=float)
        a = self.alpha
        if a < 1 and np.any(t == 0):
            raise ValueError("the derivative is singular at t=0 for alpha < 1")
        z = self.gamma * t ** a
        out = float(self.nu) * self.gamma * t ** (a - 1) * ml_array(a, a, z) if self.gamma else np.zeros_like(t)
        if a > 1 and self.mu:
            out = out + float(self.mu) * ml_array(a, 1.0, z)
        return out

    def initial_value(self):
        return self.nu

    def initial_slope(self):
        if self.alpha > 1:
            return self.mu
        if self.alpha == 1:
            return _exact(self.gamma) * self.nu if isinstance(self.gamma, (int, Fraction)) else self.gamma * float(self.nu)
        raise ValueError("no finite slope at t=0 for alpha < 1")

    def describe(self) -> str:
        s = f"{self.nu}*E[{self.alpha},1]({self.gamma}*t^{self.alpha})"
        if self.alpha > 1:
            s += f" + {self.mu}*t*E[{self.alpha},2]({self.gamma}*t^{self.alpha})"
        return s


@dataclass
class PowerChain(TimeProfile):
    """nu (+ t mu) + sum_j c_j j!/Gamma(a+j+1) t^{a+j}: the Caputo
    antiderivative of the polynomial source sum_j c_j t^j."""
    alpha: float
    coeffs: tuple
    nu: object
    mu: object = 0
    kind = "power_chain"

    def _terms(self):
        a = self.alpha
        return [(float(c) * math.factorial(j) / gamma(a + j + 1), a + j) for j, c in enumerate(self.coeffs) if c]

    def value(self, t):
        t = np.asarray(t, dtype=float)
        out = np.full_like(t, float(self.nu))
        if self.alpha > 1:
            out = out + float(self.mu) * t
        for w, p in self._terms():
            out = out + w * t ** p
        return out

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        if self.alpha < 1 and np.any(t == 0) and any(self.coeffs):
            raise ValueError("the derivative is singular at t=0 for alpha < 1")
        out = np.full_like(t, float(self.mu) if self.alpha > 1 else 0.0)
        for w, p in self._terms():
            out = out + w * p * t ** (p - 1)
        return out

    def initial_value(self):
        return self.nu

    def initial_slope(self):
        if self.alpha > 1:
            return self.mu
        if self.alpha == 1:
            return self.coeffs[0] if self.coeffs else 0
        raise ValueError("no finite slope at t=0 for alpha < 1")

    def describe(self) -> str:
        parts = [str(self.nu)]
        if self.alpha > 1:
            parts.append(f"{self.mu}*t")
        for j, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}*{math.factorial(j)}/Gamma({self.alpha + j + 1})*t^{self.alpha + j}")
        return " + ".join(parts)


def solve_linear_fode(gamma_: float, alpha: float, nu, mu_opt=None) -> MLLinear:
    if not 0 < alpha <= 2:
        raise ValueError(f"alpha must lie in (0, 2], got {alpha}")
    if alpha > 1 and mu_opt is None:
        raise ValueError("alpha > 1 needs the initial slope mu")
    return MLLinear(gamma_, alpha, nu, mu_opt if alpha > 1 else 0)


def solve_power_chain(alpha: float, source_coeffs: Sequence, nu, mu_opt=None) -> PowerChain:
    if not 0 < alpha <= 2:
        raise ValueError(f"alpha must lie in (0, 2], got {alpha}")
    if alpha > 1 and mu_opt is None:
        raise ValueError("alpha > 1 needs the initial slope mu")
    return PowerChain(alpha, tuple(source_coeffs), nu, mu_opt if alpha > 1 else 0)


# ---------------------------------------------------------------- delay

@dataclass
class DelaySpec:
    gamma: float
    mu: float
    tau: float
    alpha: float
    history: Callable          # phi on [-tau, 0], vectorized or scalar
    kappa: object
    kappa_hat: object = 0

    def __post_init__(self):
        h0 = float(np.asarray(self.history(np.array([0.0])), dtype=float).ravel()[0])
        if abs(h0 - float(self.kappa)) > 1e-12 * max(1.0, abs(float(self.kappa))):
            raise ValueError(f"history(0)={h0} differs from kappa={self.kappa}")
        if self.alpha > 1 and self.kappa_hat is None:
            raise ValueError("alpha > 1 needs kappa_hat")


def _hist(spec: DelaySpec, s: np.ndarray) -> np.ndarray:
    try:
        v = np.asarray(spec.history(s), dtype=float)
        if v.shape == s.shape:
            return v
    except Exception:
        pass
    return np.vectorize(lambda x: float(spec.history(x)))(s)


def smallness_heuristic(spec: DelaySpec) -> float:
    """|mu| tau^a E_{a,a+1}(|gamma| tau^a); >= 1 flags a possibly slow series."""
    a = spec.alpha
    return abs(spec.mu) * spec.tau ** a * ml2(a, a + 1, abs(spec.gamma) * spec.tau ** a)


class DelaySeries(TimeProfile):
    """Truncated window series for D^a y = g y + mu y(t - tau)."""
    kind = "delay_series"

    def __init__(self, spec: DelaySpec, T: float, panels: int = 12, order: int = 10):
        self.spec = spec
        self.alpha = spec.alpha
        self.T = T
        self.panels = panels
        self.order = order
        self.heuristic = smallness_heuristic(spec)
        if self.heuristic >= 1:
            warnings.warn(f"delay smallness heuristic {self.heuristic:.3g} >= 1 "
                          "(heuristic only; validate against the oracle)", DelaySmallnessWarning, stacklevel=2)

    def _series(self, t: np.ndarray) -> np.ndarray:
        sp = self.spec
        a, g, mu, tau = sp.alpha, sp.gamma, sp.mu, sp.tau
        out = np.zeros_like(t)
        nmax = int(math.ceil(np.max(t) / tau)) if t.size else 0
        for m in range(nmax + 1):
            s = t - m * tau
            on = s >= 0
            if not np.any(on):
                break
            sv = np.where(on, s, 0.0)
            z = g * sv ** a
            term = float(sp.kappa) * mu ** m * sv ** (a * m) * ml_array(a, a * m + 1, z, m + 1)
            if a > 1 and sp.kappa_hat:
                term = term + float(sp.kappa_hat) * mu ** m * sv ** (a * m + 1) * ml_array(a, a * m + 2, z, m + 1)
            out = out + np.where(on, term, 0.0)
        return out

    def _convolution(self, t: np.ndarray, panels: int) -> np.ndarray:
        sp = self.spec
        a, g, mu, tau = sp.alpha, sp.gamma, sp.mu, sp.tau
        n = self.order
        q = max(1.0, 3.0 / a)                      # grading exponent toward the left end
        gl_x, gl_w = roots_legendre(n)
        edges = (np.arange(panels + 1) / panels) ** q
        # reference nodes on [0, 1], graded panels
        X, W = [], []
        for i in range(panels):
            lo, hi = edges[i], edges[i + 1]
            X.append(lo + (hi - lo) * (gl_x + 1) / 2)
            W.append((hi - lo) / 2 * gl_w)
        X, W = np.concatenate(X), np.concatenate(W)
        out = np.zeros_like(t)
        if mu == 0:
            return out
        nmax = int(math.ceil(np.max(t) / tau)) if t.size else 0
        for m in range(nmax + 1):
            p = a * (m + 1) - 1
            jx, jw = roots_jacobi(n, 0.0, p)

            def kernel(S):
                return ml_array(a, a * (m + 1), g * S ** a, m + 1)

            def graded(lo, hi, A):
                # int_lo^hi s^p k(s) phi(A - s) ds on panels graded toward lo
                L = (hi - lo)[:, None]
                S = lo[:, None] + L * X[None, :]
                return np.sum(L * W[None, :] * S ** p * kernel(S) * _hist(sp, A[:, None] - S), axis=1)

            def jacobi(hi, A):
                # int_0^hi s^p k(s) phi(A - s) ds in one Gauss-Jacobi panel
                S = hi[:, None] * (jx[None, :] + 1) / 2
                return (hi / 2) ** (p + 1) * np.sum(jw[None, :] * kernel(S) * _hist(sp, A[:, None] - S), axis=1)

            def from_zero(hi, A):
                # graded panels with the first one replaced by Gauss-Jacobi
                h1 = hi * edges[1]
                return graded(h1, hi, A) + jacobi(h1, A) if panels > 1 else jacobi(hi, A)

            b = t - m * tau                             # upper limit in s = xi - m tau
            A = t - tau - m * tau                       # history argument is A - s
            lo = np.maximum(A, 0.0)                     # indicator: only s > A contributes
            rows = b > lo
            if not np.any(rows):
                continue
            bb, ll, AA = b[rows], lo[rows], A[rows]
            acc = np.zeros_like(bb)
            zero = ll == 0.0
            # a lower limit inside the first panel sits next to the s^p singularity:
            # integrate from 0 and subtract the short piece [0, lo]
            near = ~zero & (ll < bb * edges[1])
            far = ~zero & ~near
            if np.any(zero):
                acc[zero] = from_zero(bb[zero], AA[zero])
            if np.any(near):
                acc[near] = from_zero(bb[near], AA[near]) - jacobi(ll[near], AA[near])
            if np.any(far):
                acc[far] = graded(ll[far], bb[far], AA[far])
            out[rows] += mu ** (m + 1) * acc
        return out

    def value(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        if np.any(t < 0):
            raise ValueError("delay profile is defined for t >= 0 (use the history for t < 0)")
        base = self._series(t)
        c1 = self._convolution(t, self.panels)
        c2 = self._convolution(t, 2 * self.panels)
        diff = float(np.max(np.abs(c1 - c2))) if t.size else 0.0
        if diff > 1e-6:
            raise QuadratureError(f"convolution quadrature refinements differ by {diff:.3g} > 1e-6")
        self.last_quadrature_gap = diff
        return base + c2

    def initial_value(self):
        return self.spec.kappa

    def initial_slope(self):
        if self.alpha > 1:
            return self.spec.kappa_hat
        raise ValueError("no finite slope at t=0 for alpha <= 1 in the delay series")

    def derivative(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        if self.alpha > 1 and np.all(t == 0):
            return np.full_like(t, float(self.spec.kappa_hat))
        raise NotImplementedError("delay profile derivative is only available at t=0")

    def describe(self) -> str:
        sp = self.spec
        return (f"delay series: gamma={sp.gamma}, mu={sp.mu}, tau={sp.tau}, alpha={sp.alpha}, "
                f"kappa={sp.kappa}, kappa_hat={sp.kappa_hat}")


def solve_delay_linear_fode(spec: DelaySpec, T: float, panels: int = 12, order: int = 10) -> DelaySeries:
    return DelaySeries(spec, T, panels, order)


# ---------------------------------------------------------------- assembled solutions

@dataclass
class SpaceTimeSolution:
    basis: SubspaceBasis
    profiles: list
    alpha: float

    @property
    def spatial_parts(self) -> list:
        return list(self.basis.members)

    def value(self, point, t, bindings=None):
        t = np.asarray(t, dtype=float)
        return sum(eval_expr(m, point, bindings) * p.value(t) for m, p in zip(self.basis.members, self.profiles))

    def describe(self) -> list:
        return [f"({p.describe()}) * [{m}]" for m, p in zip(self.basis.members, self.profiles)]


def assemble_solution(basis: SubspaceBasis, profiles: Sequence[TimeProfile], alpha: float) -> SpaceTimeSolution:
    if len(profiles) != basis.dimension:
        raise ValueError(f"{len(profiles)} profiles for a {basis.dimension}-dimensional basis")
    return SpaceTimeSolution(basis, list(profiles), alpha)


def kpoly_eval_array(p: KPoly, bindings) -> np.ndarray:
    out = 0.0
    for m, c in p.terms.items():
        v = float(c)
        for name, e in m:
            v = v * np.asarray(bindings[name]) ** e
        out = out + v
    return out


@dataclass
class ResidualReport:
    h: float
    n_steps: int
    t_min: float
    n_points: int
    max_residual: float
    residual_field: np.ndarray = field(repr=False)
    max_residual_refined: float | None = None
    convergence_slope: float | None = None
    passed: bool | None = None

    def as_dict(self) -> dict:
        d = {"h": self.h, "n_steps": self.n_steps, "t_min": self.t_min, "space_points": self.n_points,
             "max_residual": self.max_residual}
        if self.max_residual_refined is not None:
            d["max_residual_h_half"] = self.max_residual_refined
        if self.convergence_slope is not None:
            d["convergence_slope"] = self.convergence_slope
        if self.passed is not None:
            d["passed"] = self.passed
        return d


def _residual_field(op: CRDOperator, sol: SpaceTimeSolution, pts, grid: UniformGrid, bindings) -> tuple:
    t = grid.times()
    a = sol.alpha
    vals = [p.value(t) for p in sol.profiles]
    derivs = []
    for p, v in zip(sol.profiles, vals):
        d = None
        if a >= 1:
            d = Trajectory(grid, p.derivative(t))
        derivs.append(caputo_uniform(Trajectory(grid, v), a, d).values)
    xi = np.array([[eval_expr(m, pt, bindings) for pt in pts] for m in sol.basis.members])   # n x P
    lhs = xi.T @ np.array(derivs)                                                         # P x T
    image = apply_operator(op, trial_function(sol.basis))
    kb = {kappa(i + 1): v for i, v in enumerate(vals)}
    rhs = np.zeros_like(lhs)
    for term, c in image.terms.items():
        sv = np.array([term.evaluate(pt[0], pt[1], bindings or {}) for pt in pts])
        rhs += np.outer(sv, kpoly_eval_array(c, kb) * np.ones_like(t))
    return t, np.abs(lhs - rhs)


def verify_solution(op: CRDOperator, sol: SpaceTimeSolution, space_points, time_grid: UniformGrid,
                    t_min: float = 0.1, refine: bool = True, tol: float | None = None,
                    bindings=None) -> ResidualReport:
    """Max |D^a_t u - K[u]| over space points x {t_k >= t_min}.

    D^a_t acts profile-wise through caputo_uniform; K acts symbolically.
    With refine, the run is repeated at h/2 and the observed order
    log2(r_h / r_{h/2}) is reported."""
    if time_grid.n_steps < MIN_STEPS:
        raise ValueError(f"grid too coarse: {time_grid.n_steps} < {MIN_STEPS} steps")
    pts = [tuple(map(float, p)) for p in space_points]

    def run(g):
        t, f = _residual_field(op, sol, pts, g, bindings)
        keep = t >= t_min - 1e-12
        return float(f[:, keep].max()), f

    r1, f1 = run(time_grid)
    rep = ResidualReport(time_grid.h, time_grid.n_steps, t_min, len(pts), r1, f1)
    if refine:
        g2 = UniformGrid(time_grid.h / 2, time_grid.n_steps * 2)
        r2, _ = run(g2)
        rep.max_residual_refined = r2
        if r1 > 1e-13 and r2 > 0:
            rep.convergence_slope = math.log2(r1 / r2)
    if tol is not None:
        rep.passed = r1 <= tol
    return rep


@dataclass
class ICReport:
    passed: bool
    exact: bool
    numeric_max_dev: float
    offending: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"ic_passed": self.passed, "ic_exact": self.exact, "ic_numeric_max_dev": self.numeric_max_dev,
                "ic_offending": "; ".join(self.offending) or "none"}


def check_initial_conditions(sol: SpaceTimeSolution, phi1: SymExpr, phi2: SymExpr | None = None,
                             points=None, bindings=None) -> ICReport:
    a = sol.alpha
    if (phi2 is not None) != (a > 1):
        raise ValueError("phi2 must be given exactly when alpha > 1")
    pts = points or [(0.0, 0.0), (0.5, 0.25), (1.0, 1.0), (-0.3, 0.7)]
    offending = []
    exact = True
    dev = 0.0
    checks = [("u(x,0)", phi1, [p.initial_value() for p in sol.profiles],
               lambda p: float(np.atleast_1d(p.value(np.array([0.0])))[0]))]
    if phi2 is not None:
        checks.append(("du/dt(x,0)", phi2, [p.initial_slope() for p in sol.profiles],
                       lambda p: float(np.atleast_1d(p.derivative(np.array([0.0])))[0])))
    for label, target, init, numeric in checks:
        u0 = SymExpr()
        for m, c in zip(sol.basis.members, init):
            u0 = u0 + m * KPoly.const(c)
        if not (u0 - target).is_zero():
            exact = False
            coords, resid = coordinates_in_span(target, sol.basis)
            for i, (c, want) in enumerate(zip(init, coords)):
                if not (KPoly.const(c) - want).is_zero():
                    offending.append(f"{label} coordinate {i + 1}: profile {c} vs target {want}")
            if not resid.is_zero():
                offending.append(f"{label} target outside the basis span: {resid}")
        nv = [numeric(p) for p in sol.profiles]
        for pt in pts:
            got = sum(eval_expr(m, pt, bindings) * v for m, v in zip(sol.basis.members, nv))
            dev = max(dev, abs(got - eval_expr(target, pt, bindings)))
    passed = exact and dev <= 1e-10
    return ICReport(passed, exact, dev, offending)


def closed_form_profiles(equations: Sequence[KPoly], alpha: float, nu: Sequence, mu: Sequence | None = None,
                         names: Sequence[str] | None = None) -> list:
    """Profiles for the reduced systems with displayed closed forms.

    D^a Phi_i = gamma_i Phi_i gives ML_linear.  D^a Phi_i = P(Phi_j, j != i)
    with every Phi_j already a polynomial in t gives a power chain.
    Anything else raises ValueError.
    """
    n = len(equations)
    names = list(names or [f"Φ{i + 1}" for i in range(n)])
    mu = list(mu) if mu is not None else [0] * n
    if alpha > 1 and len(mu) != n:
        raise ValueError("alpha > 1 needs one initial slope per profile")
    out: list = [None] * n
    poly_t: dict = {}           # name -> KPoly in "t" for polynomial profiles
    pending = list(range(n))
    while pending:
        progress = False
        for i in list(pending):
            eq, me = equations[i], names[i]
            vs = eq.variables()
            m_i = mu[i] if alpha > 1 else None
            if eq.is_zero():
                out[i] = solve_power_chain(alpha, (), nu[i], m_i)
            elif vs == {me} and eq.degree([me]) == 1 and eq.split([me]).get((), KPoly()).is_zero():
                g = eq.diff(me).const_value()
                out[i] = solve_linear_fode(float(g), alpha, nu[i], m_i)
            elif me not in vs and vs <= set(poly_t):
                src = eq.subs({})
                for v in vs:
                    src = _subs_poly(src, v, poly_t[v])
                deg = src.degree(["t"])
                coeffs = []
                for k in range(deg + 1):
                    c = src.split(["t"]).get(((("t", k),) if k else ()), KPoly())
                    if not c.is_const():
                        raise ValueError(f"unbound symbols in the source of {me}: {c}")
                    coeffs.append(c.const_value())
                out[i] = solve_power_chain(alpha, coeffs, nu[i], m_i)
            else:
                continue
            p = out[i]
            if isinstance(p, PowerChain) and not any(p.coeffs):
                poly_t[me] = KPoly.const(p.nu) + (KPoly.var("t") * p.mu if alpha > 1 else KPoly())
            pending.remove(i)
            progress = True
        if not progress:
            raise ValueError("the reduced system has no closed form of the supported kinds: "
                             + "; ".join(f"D^a {names[i]} = {equations[i]}" for i in pending))
    return out


def _subs_poly(p: KPoly, var: str, q: KPoly) -> KPoly:
    out = KPoly()
    for mono, c in p.split([var]).items():
        k = mono[0][1] if mono else 0
        out = out + c * q ** k
    return out
