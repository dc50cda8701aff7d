"""Command-line front end.

    artifact check   PROBLEM            invariance report
    artifact reduce  PROBLEM            reduced fractional ODE system
    artifact solve   PROBLEM            closed-form profiles + sampled trajectory
    artifact verify  PROBLEM            residual and initial-condition checks
    artifact corpus  FILE [--trials N] [--mode rational|numeric]
    artifact ml      ALPHA BETA [--rho R] Z

Exit codes: 0 success, 1 verification failure, 2 input error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import yaml

from .corpus import PARTS, CorpusError, load_corpus, run_corpus
from .crdop import CRDOperator, UPoly
from .exprparse import ParseError, parse_expr, parse_kpoly, parse_number
from .fracnum import UniformGrid, delay_fode_oracle
from .funcalg import AlgebraError, KPoly, SymExpr
from .invariance import check_invariance, reduce_to_fode_system
from .solutions import (DelaySpec, assemble_solution, check_initial_conditions, closed_form_profiles,
                        kpoly_eval_array, solve_delay_linear_fode, verify_solution)
from .specfun import MLDomainError, ml2, ml3
from .subspace import LinearODE, SubspaceBasis, build_type1, build_type2

PROBLEM_FIELDS = {"operator", "params", "subspace", "alpha", "initial", "delay", "grid", "tolerance", "mode"}
NUMERIC_TOL = 1e-9


class InputError(ValueError):
    pass


# ---------------------------------------------------------------- problem files

class Problem:
    """A problem file: operator, subspace, parameters, alpha, initial data,
    optional delay block and verification grid (YAML, corpus grammar)."""

    def __init__(self, path: str):
        try:
            data = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
        except yaml.YAMLError as exc:
            raise InputError(f"{path}: {exc}") from None
        if not isinstance(data, dict):
            raise InputError(f"{path}: top level must be a mapping")
        unknown = set(data) - PROBLEM_FIELDS
        if unknown:
            raise InputError(f"{path}: unknown field(s) {sorted(unknown)}")
        for f in ("operator", "subspace"):
            if f not in data:
                raise InputError(f"{path}: missing field '{f}'")
        self.path = path
        self.data = data
        self.numeric = data.get("mode") == "numeric"
        self.params = {str(k): parse_number(str(v), allow_float=True) for k, v in (data.get("params") or {}).items()}
        try:
            self.op, self.basis = self._build(self.numeric)
        except ParseError as exc:
            if "numeric mode" not in str(exc) or data.get("mode") == "rational":
                raise
            self.numeric = True
            self.op, self.basis = self._build(True)
        self.alpha = float(data["alpha"]) if "alpha" in data else None
        if self.alpha is not None and not 0 < self.alpha <= 2:
            raise InputError(f"alpha must lie in (0, 2], got {self.alpha}")

    def _bindings(self, numeric: bool) -> dict:
        return {k: float(v) for k, v in self.params.items()} if numeric else dict(self.params)

    def _build(self, numeric: bool):
        b = self._bindings(numeric)
        ops = self.data["operator"]
        if not isinstance(ops, dict) or set(ops) - set(PARTS):
            raise InputError(f"operator must map {', '.join(PARTS)} to polynomials in u")
        op = CRDOperator(**{p: UPoly.from_kpoly(parse_kpoly(str(ops.get(p, "0")), b, numeric), "u") for p in PARTS})
        free = {v for part in op.parts().values() for c in part.coeffs for v in c.variables()}
        if free:
            raise InputError(f"unbound operator symbols {sorted(free)}; give them under params")
        sub = self.data["subspace"]
        if isinstance(sub, list):
            sub = {"members": sub}
        if "members" in sub:
            basis = SubspaceBasis([parse_expr(str(m), b, numeric) for m in sub["members"]])
        elif {"type", "ode1", "ode2"} <= set(sub):
            o1 = LinearODE.make([parse_kpoly(str(c), b, numeric) for c in sub["ode1"]], 1)
            o2 = LinearODE.make([parse_kpoly(str(c), b, numeric) for c in sub["ode2"]], 2)
            basis = {"TypeI": build_type1, "TypeII": build_type2}[sub["type"]](o1, o2)
        else:
            raise InputError("subspace needs 'members' or 'type'/'ode1'/'ode2'")
        return op, basis

    def need_alpha(self) -> float:
        if self.alpha is None:
            raise InputError("problem has no alpha")
        return self.alpha

    def initial(self) -> tuple:
        init = self.data.get("initial") or {}
        n = self.basis.dimension
        nu = [parse_number(str(v), self.params) for v in init.get("nu", [])]
        if len(nu) != n:
            raise InputError(f"initial.nu needs {n} values, got {len(nu)}")
        mu = None
        if self.need_alpha() > 1:
            if "mu" not in init:
                raise InputError("alpha > 1 needs initial.mu")
            mu = [parse_number(str(v), self.params) for v in init["mu"]]
            if len(mu) != n:
                raise InputError(f"initial.mu needs {n} values, got {len(mu)}")
        elif "mu" in init:
            raise InputError("initial.mu is only allowed for alpha > 1")
        return nu, mu

    def grid(self, h_override: float | None) -> tuple:
        g = self.data.get("grid") or {}
        T = float(g.get("T", 1.0))
        h = float(h_override if h_override is not None else g.get("h", 5e-4))
        t_min = float(g.get("t_min", 0.1))
        k = int(g.get("points", 3))
        if k < 1:
            raise InputError("grid.points must be >= 1")
        axis = np.linspace(0.0, 1.0, k) if k > 1 else np.array([0.5])
        pts = [(float(x), float(y)) for x in axis for y in axis]
        try:
            grid = UniformGrid.over(T, h)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        return grid, pts, t_min

    def sym_initial(self, coeffs) -> SymExpr:
        u = SymExpr()
        for m, c in zip(self.basis.members, coeffs):
            u = u + m * KPoly.const(c)
        return u


# ---------------------------------------------------------------- reports

def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _emit(report: list, out: str | None, echo: bool = True) -> None:
    text = "".join(f"{k}={_fmt(v)}\n" for k, v in report)
    if echo:
        sys.stdout.write(text)
    if out:
        Path(out).write_text(text, encoding="utf-8")


def _solution(pb: Problem, grid_T: float):
    alpha = pb.need_alpha()
    system = reduce_to_fode_system(pb.op, pb.basis, alpha, NUMERIC_TOL if pb.numeric else 0.0)
    nu, mu = pb.initial()
    delay = pb.data.get("delay")
    if delay:
        return system, _delay_profiles(pb, system, nu, mu, delay, grid_T)
    return system, closed_form_profiles(system.equations, alpha, nu, mu)


def _delay_profiles(pb: Problem, system, nu, mu, delay: dict, T: float) -> list:
    try:
        dmu, tau = float(parse_number(str(delay["mu"]), pb.params)), float(parse_number(str(delay["tau"]), pb.params))
        hist = delay["history"]
    except KeyError as exc:
        raise InputError(f"delay block needs {exc}") from None
    if len(hist) != pb.basis.dimension:
        raise InputError(f"delay.history needs {pb.basis.dimension} expressions in t")
    out = []
    for i, (eq, h) in enumerate(zip(system.equations, hist)):
        name = f"Φ{i + 1}"
        if eq.variables() - {name} or eq.degree([name]) > 1 or not eq.split([name]).get((), KPoly()).is_zero():
            raise InputError(f"delay closed form needs D^a {name} = gamma {name}; got {eq}")
        g = float(eq.diff(name).const_value()) if not eq.is_zero() else 0.0
        hp = parse_kpoly(str(h), pb.params, True)
        if hp.variables() - {"t"}:
            raise InputError(f"history {h!r} must be a polynomial in t")
        hist_fn = (lambda p: (lambda s: kpoly_eval_array(p, {"t": np.asarray(s, dtype=float)})
                                        * np.ones_like(np.asarray(s, dtype=float))))(hp)
        spec = DelaySpec(g, dmu, tau, pb.alpha, hist_fn, nu[i], mu[i] if mu else 0)
        out.append(solve_delay_linear_fode(spec, T))
    return out


def cmd_check(a) -> int:
    pb = Problem(a.problem)
    rep = check_invariance(pb.op, pb.basis, NUMERIC_TOL if pb.numeric else 0.0, a.seed)
    r = [("problem", a.problem), ("mode", "numeric" if pb.numeric else "rational"),
         ("basis", str(pb.basis)), ("dimension", pb.basis.dimension),
         ("invariant", rep.invariant), ("residual_norm", float(rep.residual_norm))]
    r += [(f"psi.{i + 1}", str(p)) for i, p in enumerate(rep.psi)]
    if not rep.invariant:
        r.append(("residual", str(rep.residual)))
        if rep.witness:
            r.append(("witness", ",".join(f"{k}:{v}" for k, v in sorted(rep.witness.items()))))
    r.append(("status", "PASS" if rep.invariant else "FAIL"))
    _emit(r, a.out)
    return 0 if rep.invariant else 1


def cmd_reduce(a) -> int:
    pb = Problem(a.problem)
    try:
        system = reduce_to_fode_system(pb.op, pb.basis, pb.alpha, NUMERIC_TOL if pb.numeric else 0.0)
    except AlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    r = [("problem", a.problem), ("alpha", pb.alpha if pb.alpha is not None else "unset")]
    r += [(f"fode.{i + 1}", f"D^a Φ{i + 1} = {e}") for i, e in enumerate(system.equations)]
    _emit(r, a.out)
    return 0


def cmd_solve(a) -> int:
    pb = Problem(a.problem)
    grid, _, _ = pb.grid(a.h)
    try:
        system, profiles = _solution(pb, grid.T)
    except AlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sol = assemble_solution(pb.basis, profiles, pb.alpha)
    t = grid.times()
    vals = np.column_stack([t] + [p.value(t) for p in profiles])
    traj = a.traj or f"{Path(a.problem).stem}_trajectory.csv"
    header = "t," + ",".join(f"Phi{i + 1}" for i in range(len(profiles)))
    with open(traj, "w", encoding="utf-8") as fh:
        fh.write(header + "\n")
        fh.writelines(",".join(repr(float(v)) for v in row) + "\n" for row in vals)
    r = [("problem", a.problem), ("alpha", pb.alpha)]
    r += [(f"fode.{i + 1}", f"D^a Φ{i + 1} = {e}") for i, e in enumerate(system.equations)]
    r += [(f"profile.{i + 1}", s) for i, s in enumerate(sol.describe())]
    r += [("trajectory", traj), ("samples", len(t))]
    _emit(r, a.out)
    return 0


def cmd_verify(a) -> int:
    pb = Problem(a.problem)
    grid, pts, t_min = pb.grid(a.h)
    try:
        system, profiles = _solution(pb, grid.T)
    except AlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sol = assemble_solution(pb.basis, profiles, pb.alpha)
    nu, mu = pb.initial()
    b = {k: float(v) for k, v in pb.params.items()}
    r = [("problem", a.problem), ("alpha", pb.alpha), ("h", grid.h), ("T", grid.T)]
    delay = pb.data.get("delay")
    if delay:
        tol = float(pb.data.get("tolerance", 1e-4))
        gap = 0.0
        t = grid.times()
        for p in profiles:
            sp = p.spec
            orc = delay_fode_oracle(sp.gamma, sp.mu, sp.tau, sp.alpha, lambda s, f=sp.history: float(np.ravel(f(np.array([s])))[0]),
                                    float(sp.kappa), grid, float(sp.kappa_hat) if sp.alpha > 1 else None)
            gap = max(gap, float(np.max(np.abs(p.value(t[1:]) - orc.values[1:]))))
        r += [("check", "delay_series_vs_oracle"), ("max_deviation", gap),
              ("heuristic", max(p.heuristic for p in profiles))]
        ok = gap <= tol
    else:
        tol = float(pb.data.get("tolerance", 5e-3))
        rep = verify_solution(pb.op, sol, pts, grid, t_min=t_min, tol=tol, bindings=b)
        r += [(f"residual.{k}", v) for k, v in rep.as_dict().items()]
        ok = bool(rep.passed)
    phi2 = pb.sym_initial(mu) if pb.alpha > 1 else None
    ic = check_initial_conditions(sol, pb.sym_initial(nu), phi2, bindings=b)
    r += list(ic.as_dict().items())
    r += [("tolerance", tol), ("status", "PASS" if ok and ic.passed else "FAIL")]
    _emit(r, a.out)
    return 0 if ok and ic.passed else 1


def cmd_corpus(a) -> int:
    entries = []
    for f in a.file:
        entries += load_corpus(f)
    rep = run_corpus(entries, a.trials, a.mode, a.seed, workers=a.workers)
    text = rep.to_text()
    sys.stdout.write(text)
    if a.out:
        Path(a.out).write_text(text, encoding="utf-8")
    return 0 if rep.all_invariant and rep.all_controls_flagged else 1


def cmd_ml(a) -> int:
    try:
        v = ml2(a.alpha, a.beta, a.z) if a.rho == 1.0 else ml3(a.alpha, a.beta, a.rho, a.z)
    except MLDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(repr(v))
    if a.out:
        _emit([("alpha", a.alpha), ("beta", a.beta), ("rho", a.rho), ("z", a.z), ("value", v)], a.out, echo=False)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="artifact", description=__doc__.split("\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the key=value report to this path")
    common.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="cmd", required=True)
    for name, fn in (("check", cmd_check), ("reduce", cmd_reduce), ("solve", cmd_solve), ("verify", cmd_verify)):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("problem")
        s.add_argument("--h", type=float, help="time step (overrides grid.h)")
        if name == "solve":
            s.add_argument("--traj", help="trajectory CSV path")
        s.set_defaults(fn=fn)
    s = sub.add_parser("corpus", parents=[common])
    s.add_argument("file", nargs="+", help="corpus file path or shipped name (tables_2_15, tables_17_27)")
    s.add_argument("--trials", type=int, default=5)
    s.add_argument("--mode", choices=("rational", "numeric"), default="rational")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--h", type=float, help=argparse.SUPPRESS)
    s.set_defaults(fn=cmd_corpus)
    s = sub.add_parser("ml", parents=[common])
    s.add_argument("alpha", type=float)
    s.add_argument("beta", type=float)
    s.add_argument("z", type=float)
    s.add_argument("--rho", type=float, default=1.0)
    s.add_argument("--h", type=float, help=argparse.SUPPRESS)
    s.set_defaults(fn=cmd_ml)
    return p


def main(argv=None) -> int:
    p = build_parser()
    try:
        a = p.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return a.fn(a)
    except (InputError, ParseError, CorpusError, AlgebraError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run_cli(argv) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
