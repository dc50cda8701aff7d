"""Regenerate the shipped corpus YAML files from compact row tuples.

Run from the repository root:  python3 tools/gen_corpus.py
The YAML files are the source of truth at run time; this script only
saves typing when rows are added.
"""
import re
from pathlib import Path

import yaml

OUT = Path(__file__).resolve().parents[1] / "src" / "artifact" / "corpus" / "data"
NAMES = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
RESERVED = {"x1", "x2", "u", "exp", "sin", "cos", "sqrt"}


def roots(p, q, x):
    """Members for D^2 + p D + q on axis x with real distinct roots."""
    d = f"sqrt({p}^2-4*{q})"
    return [f"exp(-1/2*({p}-{d})*{x})", f"exp(-1/2*({p}+{d})*{x})"], [f"{p}^2-4*{q}"]


def trig(w, x, pre=""):
    pre = pre + "*" if pre else ""
    return [f"{pre}sin(sqrt({w})*{x})", f"{pre}cos(sqrt({w})*{x})"], [w]


def entry(eid, cls, ops, members, positive=(), controls=(), erratum="", nonzero=()):
    A1, A2, B1, B2, C = ops
    rec = {"id": eid, "class": cls, "A1": A1, "A2": A2, "B1": B1, "B2": B2, "C": C}
    for k in ("B1", "B2", "C"):
        if rec[k] == "0":
            del rec[k]
    rec["subspace"] = {"members": list(members)}
    texts = [A1, A2, B1, B2, C] + list(members) + list(positive) + list(nonzero)
    syms = sorted({n for t in texts for n in NAMES.findall(t)} - RESERVED)
    rec["free"] = " ".join(syms)
    if positive:
        rec["positive"] = list(positive)
    if nonzero:
        rec["nonzero"] = list(nonzero)
    if any("sqrt" in m for m in members):
        rec["mode"] = "numeric"
    if controls:
        rec["controls"] = [{"part": p, "power": k, "delta": "1"} for p, k in controls]
    if erratum:
        rec["erratum"] = erratum
    return rec


P = {  # recurring coefficient polynomials
    "c": "c0", "c1": "c1*u+c0", "c2": "c2*u^2+c1*u+c0",
    "b": "beta0", "b1": "beta1*u+beta0", "b2": "beta2*u^2+beta1*u+beta0",
    "d": "d0", "d1": "d1*u+d0", "l": "lambda0", "l1": "lambda1*u+lambda0",
    "k": "k1*u+k0",
}
E = lambda *m: list(m)
ONE_A1 = ["1", "exp(-a1*x1)", "exp(-b1*x2)"]


def rows_2_15():
    R = []
    R.append(entry("T2.1a", "full", ["-b1^2*beta1/a1^2*u+c0", P["b1"], "(-4*b1^2*beta1+b1*lambda1)/a1*u+d0",
                                     P["l1"], "(-2*b1^2*beta1+b1*lambda1)*u^2+k1*u+k0"], ONE_A1,
                   controls=[("C", 2)]))
    R.append(entry("T2.1b", "full", [P["c1"], "-c1*a1^2/b1^2*u+beta0", "(4*a1^2*c1+b1*lambda1)/a1*u+d0",
                                     P["l1"], "(2*a1^2*c1+b1*lambda1)*u^2+k1*u+k0"], ONE_A1,
                   erratum="A1 printed as c0; the printed B1 and C ties hold only with A1 = c1 u + c0 "
                           "(the printed row is invariant only when c1 = 0)"))
    R.append(entry("T3.1", "full", [P["c2"], P["b2"], P["d1"], P["l1"], P["k"]], E("1", "x1", "x2"),
                   controls=[("B1", 2)]))
    R.append(entry("T3.2", "full", ["c0", P["b2"], "d0", P["l1"], P["k"]], E("1", "exp(-a1*x1)", "x2")))
    R.append(entry("T3.3", "full", [P["c2"], "beta0", P["d1"], "lambda0", P["k"]], E("1", "exp(-b1*x2)", "x1")))
    R.append(entry("T4.1a", "full", [P["c1"], "-c1*a1^2/b1^2*u+beta0", P["d1"], "(-4*a1^2*c1+a1*d1)/b1*u+lambda0",
                                     "(-2*a1^2*c1+a1*d1)*u^2+k1*u+k0"], ONE_A1, controls=[("C", 2)]))
    R.append(entry("T4.1b", "full", ["c0", "beta0", "b1*lambda1/a1*u+d0", P["l1"], "b1*lambda1*u^2+k1*u+k0"], ONE_A1))
    R.append(entry("T4.2", "full", ["c0", "beta0", P["d1"], P["l1"], "a1*d1*u^2+k1*u+k0"],
                   E("1", "exp(-a1*x1)", "exp(-d1*a1/lambda1*x2)")))
    R.append(entry("T5.4", "full", [P["c1"], P["b1"], "d0", P["l1"], P["k"]], E("1", "x1", "x1^2/2", "x2"),
                   controls=[("B1", 1)]))
    R.append(entry("T5.5", "full", [P["c1"], P["b1"], "d0", "lambda0", P["k"]], E("1", "x1", "x1^2/2", "x2", "x2^2/2")))
    R.append(entry("T5.6a", "full", ["c0", P["b1"], "d0", P["l1"], P["k"]], E("1", "exp(-a1*x1)", "x2")))
    R.append(entry("T5.6b", "full", ["c0", P["b1"], "d0", P["l1"], P["k"]], E("1", "exp(-a2*x1)", "x1", "x2")))
    m, pos = roots("a2", "a1", "x1")
    R.append(entry("T5.7", "full", ["c0", P["b1"], "d0", "lambda0", P["k"]], ["1"] + m + ["x2", "x2^2/2"], pos))
    m, pos = roots("b2", "b1", "x2")
    R.append(entry("T6.8", "full", [P["c1"], "beta0", "d0", "lambda0", P["k"]], ["1"] + m + ["x1", "x1^2/2"], pos))
    R.append(entry("T6.9", "full", ["d1/(4*a1)*u+c0", P["b1"], P["d1"], "lambda0", "d1*a1/2*u^2+k1*u+k0"],
                   ["1", "exp(-a1*x1)", "sin(1/2*sqrt(a1*d1/beta1)*x2)", "cos(1/2*sqrt(a1*d1/beta1)*x2)"],
                   ["a1*d1/beta1"]))
    R.append(entry("T6.10", "full", [P["c1"], "lambda1/(4*b1)*u+beta0", "d0", P["l1"], "lambda1*b1/2*u^2+k1*u+k0"],
                   ["1", "exp(-b1*x2)", "sin(1/2*sqrt(lambda1*b1/c1)*x1)", "cos(1/2*sqrt(lambda1*b1/c1)*x1)"],
                   ["lambda1*b1/c1"]))
    m, pos = trig("a1", "x1")
    R.append(entry("T6.11", "full", [P["c1"], "a1*c1/b1^2*u+beta0", "d0", "4*a1*c1/b1*u+lambda0",
                                     "2*a1*c1*u^2+k1*u+k0"], ["1", "exp(-b1*x2)"] + m, pos, controls=[("C", 2)]))
    m, pos = trig("b1", "x2")
    R.append(entry("T7.12", "full", [P["c1"], "beta0", "d0", "lambda0", P["k"]], ["1", "x1", "x1^2/2"] + m, pos,
                   controls=[("A2", 1)]))
    m, pos = trig("a1", "x1")
    R.append(entry("T7.13", "full", ["c0", P["b1"], "d0", "lambda0", P["k"]], ["1", "x2", "x2^2/2"] + m, pos))
    # cubic operators
    R.append(entry("T8.1", "full", ["(-3*b0^2*beta2+a0*d2+b0*lambda2)/(3*a0^2)*u^2"
                                    "+(-2*b0^2*beta1+a0*d1+b0*lambda1-k2)/(2*a0^2)*u+c0",
                                    P["b2"], "d2*u^2+d1*u+d0", "lambda2*u^2+lambda1*u+lambda0", "k2*u^2+k1*u"],
                   E("exp(-a0*x1-b0*x2)"), controls=[("A1", 1)]))
    R.append(entry("T9.2", "full", ["c0", "lambda2/(3*b0)*u^2+beta1*u+beta0", "d0", "lambda2*u^2+lambda1*u+lambda0",
                                    "(-2*b0^2*beta1+b0*lambda1)*u^2+k1*u"], E("exp(-b0*x2)", "exp(-a1*x1-b0*x2)")))
    R.append(entry("T9.3a", "full", ["d2/(3*a0)*u^2+c0", "beta0", "d2*u^2+d1*u+d0", "lambda0", "a0*d1*u^2+k1*u"],
                   E("exp(-a0*x1)", "exp(-a0*x1-b1*x2)")))
    R.append(entry("T9.3b", "full", ["d2/(3*a0)*u^2+c1*u+c0", "beta0", "d2*u^2+d1*u+d0", "lambda0",
                                     "(-2*a0^2*c1+a0*d1)*u^2+k1*u"], E("exp(-a0*x1)", "exp(-a0*x1-b1*x2)"),
                   controls=[("C", 2)]))
    m, pos = roots("b1", "b0", "x2")
    m = [s.replace("exp(", "exp(-a0*x1") for s in m]
    R.append(entry("T9.4", "full", ["d2/(3*a0)*u^2+c0", "beta0", "d2*u^2+d1*u+d0", "lambda0", "a0*d1*u^2+k1*u"],
                   m, pos, erratum="A1 printed as d2/(3 d0) u^2 + c0; the d0 denominator fails every draw, "
                                   "the a0 denominator of the neighbouring rows is encoded"))
    m, pos = trig("b0", "x2", "exp(-a0*x1)")
    R.append(entry("T10.5", "full", ["c2*u^2+c0", "beta0", "3*a0*c2*u^2+d1*u+d0", "lambda0", "a0*d1*u^2+k1*u"], m, pos,
                   controls=[("B1", 2)]))
    m, pos = trig("a0", "x1", "exp(-b0*x2)")
    R.append(entry("T10.6", "full", ["c0", P["b2"], "d0", "3*beta2*b0*u^2+lambda1*u+lambda0",
                                     "(-2*b0^2*beta1+b0*lambda1)*u^2+k1*u"], m, pos))
    m, pos = trig("b1", "x2", "exp(-a0*x1)")
    R.append(entry("T10.7", "full", [P["c2"], "beta0", "3*a0*c2*u^2+d1*u+d0", "lambda0",
                                     "(-2*a0^2*c1+a0*d1)*u^2+k1*u"], ["exp(-a0*x1)"] + m, pos))
    R.append(entry("T10.8", "full", [P["c2"], P["b1"], P["d1"], P["l1"], P["k"]], E("1", "x1", "x2")))
    R.append(entry("T11.9", "full", [P["c1"], P["b2"], "d0", P["l1"], P["k"]], E("1", "x1", "x1^2/2", "x2"),
                   controls=[("B1", 1)]))
    R.append(entry("T11.10", "full", [P["c2"], P["b1"], P["d1"], "lambda0", P["k"]], E("1", "x1", "x2", "x2^2/2")))
    m, pos = roots("a2", "a1", "x1")
    R.append(entry("T11.11", "full", ["c0", P["b2"], "d0", P["l1"], P["k"]], ["1"] + m + ["x2"], pos,
                   erratum="second exponent printed with an unbalanced parenthesis, "
                           "-1/2 a2 + sqrt(a2^2-4a1)) x1; read as -1/2 (a2 + sqrt(a2^2-4a1)) x1"))
    m, pos = roots("b2", "b1", "x2")
    R.append(entry("T11.12", "full", [P["c2"], "beta0", P["d1"], "lambda0", P["k"]], ["1"] + m + ["x1"], pos))
    m, pos = trig("b1", "x2")
    R.append(entry("T12.13", "full", [P["c2"], "beta0", P["d1"], "lambda0", P["k"]], ["1", "x1"] + m, pos,
                   controls=[("A2", 1)]))
    m, pos = trig("a1", "x1")
    R.append(entry("T12.14", "full", ["c0", P["b2"], "d0", P["l1"], P["k"]], ["1", "x2"] + m, pos))
    # other non-linearities
    m, pos = roots("b1", "b0", "x2")
    m = [s.replace("exp(", "exp(-a0*x1") for s in m]
    R.append(entry("T13.1", "full", ["d3/(4*a0)*u^3+c2*u^2+c0", "beta0", "d3*u^3+d2*u^2+d1*u+d0", "lambda0",
                                     "(-3*a0^2*c2+a0*d2)*u^3+a0*d1*u^2+k1*u"], m, pos, controls=[("A1", 3)]))
    m2, pos2 = roots("a1", "a0", "x1")
    m2 = [s.replace("exp(", "exp(-b0*x2") for s in m2]
    R.append(entry("T14.2", "full", ["c0", "1/4*lambda3/b0*u^3+beta1*u+beta0", "d0",
                                     "lambda3*u^3+lambda2*u^2+lambda1*u+lambda0",
                                     "b0*lambda2*u^3+(-2*b0^2*beta1+b0*lambda1)*u^2+k1*u"], m2, pos2))
    R.append(entry("T14.3", "full", ["1/4*d3/a0*u^3+c2*u^2+c1*u+c0", "beta0", "d3*u^3+d2*u^2+d1*u+d0", "lambda0",
                                     "(-3*a0^2*c2+a0*d2)*u^3+(-2*a0^2*c1+a0*d1)*u^2+k1*u"],
                   ["exp(-a0*x1)"] + m, pos))
    m, pos = trig("b0", "x2", "exp(-a0*x1)")
    R.append(entry("T14.4", "full", ["c3*u^3+c2*u^2+c0", "beta0", "4*a0*c3*u^3+d2*u^2+d1*u+d0", "lambda0",
                                     "(-3*a0^2*c2+a0*d2)*u^3+a0*d1*u^2+k1*u"], m, pos, controls=[("B1", 3)]))
    m, pos = trig("a0", "x1", "exp(-b0*x2)")
    R.append(entry("T15.5", "full", ["c0", "beta3*u^3+beta1*u+beta0", "d0",
                                     "4*b0*beta3*u^3+lambda2*u^2+lambda1*u+lambda0",
                                     "lambda2*b0*u^3+(-2*b0^2*beta1+b0*lambda1)*u^2+k1*u"], m, pos))
    m, pos = trig("a1", "x1", "exp(-b0*x2)")
    R.append(entry("T15.6", "full", ["c0", "beta3*u^3+beta2*u^2+beta1*u+beta0", "d0",
                                     "4*b0*beta3*u^3+lambda2*u^2+lambda1*u+lambda0",
                                     "(-3*b0^2*beta2+b0*lambda2)*u^3+(-2*b0^2*beta1+b0*lambda1)*u^2+k1*u"],
                   ["exp(-b0*x2)"] + m, pos))
    m, pos = trig("b1", "x2", "exp(-a0*x1)")
    R.append(entry("T15.7", "full", ["c3*u^3+c2*u^2+c1*u+c0", "beta0", "4*a0*c3*u^3+d2*u^2+d1*u+d0", "lambda0",
                                     "(-3*a0^2*c2+a0*d2)*u^3+(-2*a0^2*c1+a0*d1)*u^2+k1*u"],
                   ["exp(-a0*x1)"] + m, pos, controls=[("C", 3)]))
    return R


def rows_17_27():
    R = []
    cd, rd, df = "convection_diffusion", "reaction_diffusion", "diffusion"
    ex_a = lambda: roots("a2", "a1", "x1")
    ex_b = lambda: roots("b2", "b1", "x2")
    # (4.1) quadratic
    R.append(entry("T17.1", cd, ["-b1*lambda1/(2*a1^2)*u+c0", "lambda1/(2*b1)*u+beta0", "-b1*lambda1/a1*u+d0",
                                 P["l1"], "0"], ONE_A1, controls=[("A2", 1)]))
    R.append(entry("T17.2a", cd, ["c0", P["b1"], "d0", P["l1"], "0"], E("1", "x2", "exp(-a1*x1)")))
    R.append(entry("T17.2b", cd, ["c0", P["b1"], "d0", P["l1"], "0"], E("1", "exp(-a2*x1)", "x1", "x2")))
    R.append(entry("T18.3a", cd, ["c0", P["b1"], "d0", "lambda0", "0"], E("1", "exp(-a1*x1)", "x2", "x2^2/2")))
    m, pos = ex_a()
    R.append(entry("T18.3b", cd, ["c0", P["b1"], "d0", "lambda0", "0"], ["1"] + m + ["x2", "x2^2/2"], pos))
    R.append(entry("T18.4a", cd, [P["c1"], "beta0", "d0", "lambda0", "0"], E("1", "exp(-b1*x2)", "x1", "x1^2/2")))
    m, pos = trig("b1", "x2")
    R.append(entry("T18.4b", cd, [P["c1"], "beta0", "d0", "lambda0", "0"], ["1", "x1", "x1^2/2"] + m, pos))
    m, pos = ex_b()
    R.append(entry("T18.4c", cd, [P["c1"], "beta0", "d0", "lambda0", "0"], ["1"] + m + ["x1", "x1^2/2"], pos))
    R.append(entry("T18.5", cd, [P["c1"], P["b1"], "d0", P["l1"], "0"], E("1", "x1", "x1^2/2", "x2"),
                   controls=[("B1", 1)]))
    R.append(entry("T18.6", cd, [P["c1"], P["b1"], "d0", "lambda0", "0"], E("1", "x1", "x1^2/2", "x2", "x2^2/2")))
    m, pos = trig("a1", "x1")
    R.append(entry("T18.7", cd, ["c0", P["b1"], "d0", "lambda0", "0"], ["1", "x2", "x2^2/2"] + m, pos))
    # (4.1) cubic
    R.append(entry("T19.1", cd, ["1/3*(-3*b0^2*beta2+a0*d2+b0*lambda2)/a0^2*u^2"
                                 "+1/2*(-2*b0^2*beta1+a0*d1+b0*lambda1)/a0^2*u+c0",
                                 P["b2"], "d2*u^2+d1*u+d0", "lambda2*u^2+lambda1*u+lambda0", "0"],
                   E("exp(-a0*x1-b0*x2)"), controls=[("A1", 2)]))
    R.append(entry("T19.2", cd, ["1/3*d2/a0*u^2+1/2*d1/a0*u+c0", "beta0", "d2*u^2+d1*u+d0", "lambda0", "0"],
                   E("exp(-a0*x1)", "exp(-a0*x1-b0*x2)")))
    m, pos = roots("a1", "a0", "x1")
    m = [s.replace(")*x1)", ")*x1-b0*x2)") for s in m]
    R.append(entry("T19.3", cd, ["c0", "lambda2/(3*b0)*u^2+lambda1/(2*b0)*u+beta0", "d0",
                                 "lambda2*u^2+lambda1*u+lambda0", "0"], m, pos))
    m, pos = trig("b0", "x2", "exp(-a0*x1)")
    R.append(entry("T19.4", cd, ["c2*u^2+c0", "beta0", "3*a0*c2*u^2+d0", "lambda0", "0"], m, pos))
    m, pos = trig("a0", "x1", "exp(-b0*x2)")
    R.append(entry("T19.5", cd, ["c0", P["b2"], "d0", "3*b0*beta2*u^2+2*b0*beta1*u+lambda0", "0"], m, pos))
    R.append(entry("T20.6", cd, [P["c2"], "beta0", P["d1"], "lambda0", "0"], E("1", "exp(-b1*x2)", "x1")))
    R.append(entry("T20.7a", cd, ["c0", P["b2"], "d0", P["l1"], "0"], E("1", "exp(-a1*x1)", "x2")))
    m, pos = ex_a()
    R.append(entry("T20.7b", cd, ["c0", P["b2"], "d0", P["l1"], "0"], ["1"] + m + ["x2"], pos))
    m, pos = ex_b()
    R.append(entry("T20.8", cd, [P["c2"], "beta0", P["d1"], "lambda0", "0"], ["1"] + m + ["x1"], pos))
    R.append(entry("T20.9a", cd, [P["c2"], P["b1"], P["d1"], P["l1"], "0"], E("1", "x1", "x2"),
                   controls=[("B1", 2)]))
    R.append(entry("T20.9b", cd, [P["c2"], P["b2"], P["d1"], P["l1"], "0"], E("1", "x1", "x2")))
    R.append(entry("T20.10", cd, [P["c2"], P["b1"], P["d1"], "lambda0", "0"], E("1", "x1", "x2", "x2^2/2")))
    R.append(entry("T20.11", cd, [P["c1"], P["b2"], "d0", P["l1"], "0"], E("1", "x1", "x1^2/2", "x2")))
    m, pos = trig("a1", "x1")
    R.append(entry("T21.12", cd, ["c0", P["b2"], "d0", P["l1"], "0"], ["1", "x2"] + m, pos))
    m, pos = trig("b1", "x2")
    R.append(entry("T21.13", cd, [P["c2"], "beta0", P["d1"], "lambda0", "0"], ["1", "x1"] + m, pos))
    # (4.1) other
    m, pos = roots("b1", "b0", "x2")
    m = [s.replace("exp(", "exp(-a0*x1") for s in m]
    R.append(entry("T22.1", cd, ["d3/(4*a0)*u^3+d2/(3*a0)*u^2+c0", "beta0", "d3*u^3+d2*u^2+d0", "lambda0", "0"],
                   m, pos, controls=[("A1", 3)]))
    m2, pos2 = roots("a1", "a0", "x1")
    m2 = [s.replace("exp(", "exp(-b0*x2") for s in m2]
    R.append(entry("T22.2", cd, ["c0", "lambda3/(4*b0)*u^3+lambda1/(2*b0)*u+beta0", "d0",
                                 "lambda3*u^3+lambda1*u+lambda0", "0"], m2, pos2))
    R.append(entry("T23.3", cd, ["d3/(4*a0)*u^3+d2/(3*a0)*u^2+d1/(2*a0)*u+c0", "beta0", "d3*u^3+d2*u^2+d1*u+d0",
                                 "lambda0", "0"], m + ["exp(-a0*x1)"], pos))
    m, pos = trig("b0", "x2", "exp(-a0*x1)")
    R.append(entry("T23.4", cd, ["c3*u^3+c2*u^2+c0", "beta0", "4*a0*c3*u^3+3*a0*c2*u^2+d0", "lambda0", "0"], m, pos,
                   controls=[("B1", 2)]))
    m, pos = trig("b1", "x2", "exp(-a0*x1)")
    R.append(entry("T23.5", cd, ["c3*u^3+c2*u^2+c1*u+c0", "beta0", "4*a0*c3*u^3+3*a0*c2*u^2+2*a0*c1*u+d0",
                                 "lambda0", "0"], ["exp(-a0*x1)"] + m, pos))
    m, pos = trig("a0", "x1", "exp(-b0*x2)")
    R.append(entry("T23.6", cd, ["c0", "beta3*u^3+beta1*u+beta0", "d0", "4*b0*beta3*u^3+2*b0*beta1*u+lambda0", "0"],
                   m, pos, erratum="second member printed as e^{b0 x2} cos(sqrt(a0) x1); "
                                   "the sign of the first member is encoded"))
    m, pos = trig("a1", "x1", "exp(-b0*x2)")
    R.append(entry("T23.7", cd, ["c0", "beta3*u^3+beta2*u^2+beta1*u+beta0", "d0",
                                 "4*b0*beta3*u^3+3*b0*beta2*u^2+2*b0*beta1*u+lambda0", "0"],
                   m + ["exp(-b0*x2)"], pos))
    # (4.2) quadratic
    R.append(entry("T24.1", rd, ["-1/2*(2*b0^2*beta1+k2)/a0^2*u+c0", P["b1"], "0", "0", "k2*u^2+k1*u"],
                   E("exp(-a0*x1-b0*x2)"), controls=[("A1", 1)]))
    R.append(entry("T24.2", rd, [P["c1"], "beta0", "0", "0", "-2*a0^2*c1*u^2+k1*u"],
                   E("exp(-a0*x1)", "exp(-a0*x1-b1*x2)")))
    R.append(entry("T24.3", rd, ["c0", P["b1"], "0", "0", "-2*b0^2*beta1*u^2+k1*u"],
                   E("exp(-b0*x2)", "exp(-a1*x1-b0*x2)")))
    R.append(entry("T24.4a", rd, ["c0", P["b1"], "0", "0", P["k"]], E("1", "exp(-a1*x1)", "x2", "x2^2/2")))
    R.append(entry("T24.4b", rd, ["c0", P["b1"], "0", "0", P["k"]], E("1", "exp(-a2*x1)", "x1", "x2")))
    m, pos = ex_a()
    R.append(entry("T24.4c", rd, ["c0", P["b1"], "0", "0", P["k"]], ["1"] + m + ["x2", "x2^2/2"], pos))
    R.append(entry("T24.5a", rd, [P["c1"], "beta0", "0", "0", P["k"]], E("1", "exp(-b1*x2)", "x1", "x1^2/2")))
    m, pos = ex_b()
    R.append(entry("T24.5b", rd, [P["c1"], "beta0", "0", "0", P["k"]], ["1"] + m + ["x1", "x1^2/2"], pos))
    R.append(entry("T24.6a", rd, [P["c1"], P["b1"], "0", "0", P["k"]], E("1", "x1", "x1^2/2", "x2")))
    R.append(entry("T24.6b", rd, [P["c1"], P["b1"], "0", "0", P["k"]], E("1", "x1", "x2", "x1^2/2", "x2^2/2")))
    m, pos = ex_b()
    R.append(entry("T24.7a", rd, [P["c1"], "beta0", "0", "0", P["k"]], ["1", "x1", "x1^2/2"] + m, pos))
    m, pos = trig("b1", "x2")
    R.append(entry("T24.7b", rd, [P["c1"], "beta0", "0", "0", P["k"]], ["1", "x1", "x1^2/2"] + m, pos))
    R.append(entry("T24.8a", rd, ["c0", P["b1"], "0", "0", P["k"]], E("1", "exp(-a1*x1)", "x2", "x2^2/2")))
    m, pos = trig("a1", "x1")
    R.append(entry("T24.8b", rd, ["c0", P["b1"], "0", "0", P["k"]], ["1", "x2", "x2^2/2"] + m, pos))
    m, pos = ex_a()
    R.append(entry("T24.8c", rd, ["c0", P["b1"], "0", "0", P["k"]], ["1", "x2", "x2^2/2"] + m, pos))
    # (4.2) cubic
    R.append(entry("T25.1", rd, [P["c2"], "beta0", "0", "0", P["k"]], E("1", "x1", "exp(-b1*x2)")))
    R.append(entry("T25.2", rd, ["c0", P["b2"], "0", "0", P["k"]], E("1", "x2", "exp(-a1*x1)")))
    m, pos = ex_b()
    R.append(entry("T25.3", rd, [P["c2"], "beta0", "0", "0", P["k"]], ["1", "x1"] + m, pos))
    m, pos = ex_a()
    R.append(entry("T25.4", rd, ["c0", P["b2"], "0", "0", P["k"]], ["1", "x2"] + m, pos))
    R.append(entry("T25.5", rd, [P["c2"], P["b2"], "0", "0", P["k"]], E("1", "x1", "x2"), controls=[("C", 2)]))
    R.append(entry("T25.6", rd, [P["c2"], P["b1"], "0", "0", P["k"]], E("1", "x1", "x2", "x2^2/2")))
    R.append(entry("T25.7", rd, [P["c1"], P["b2"], "0", "0", P["k"]], E("1", "x1", "x2", "x1^2/2")))
    m, pos = trig("b1", "x2")
    R.append(entry("T25.8", rd, [P["c2"], "beta0", "0", "0", P["k"]], ["1", "x1"] + m, pos))
    m, pos = trig("a1", "x1")
    R.append(entry("T25.9", rd, ["c0", P["b2"], "0", "0", P["k"]], ["1", "x2"] + m, pos))
    # (4.3) quadratic
    R.append(entry("T26.1a", df, ["c0", P["b1"], "0", "0", "0"], E("1", "exp(-a1*x1)", "x2", "x2^2/2")))
    R.append(entry("T26.1b", df, ["c0", P["b1"], "0", "0", "0"], E("1", "exp(-a2*x1)", "x1", "x2")))
    m, pos = ex_a()
    R.append(entry("T26.1c", df, ["c0", P["b1"], "0", "0", "0"], ["1"] + m + ["x2", "x2^2/2"], pos))
    R.append(entry("T26.2a", df, [P["c1"], "beta0", "0", "0", "0"], E("1", "exp(-b1*x2)", "x1", "x1^2/2")))
    m, pos = ex_b()
    R.append(entry("T26.2b", df, [P["c1"], "beta0", "0", "0", "0"], ["1"] + m + ["x1", "x1^2/2"], pos))
    R.append(entry("T26.3a", df, [P["c1"], P["b1"], "0", "0", "0"], E("1", "x1", "x2", "x1^2/2"),
                   controls=[("A1", 2)]))
    R.append(entry("T26.3b", df, [P["c1"], P["b1"], "0", "0", "0"], E("1", "x1", "x1^2/2", "x2", "x2^2/2")))
    m, pos = trig("a1", "x1")
    R.append(entry("T26.4", df, ["c0", P["b1"], "0", "0", "0"], ["1", "x2", "x2^2/2"] + m, pos))
    m, pos = trig("b1", "x2")
    R.append(entry("T26.5", df, [P["c1"], "beta0", "0", "0", "0"], ["1", "x1", "x1^2/2"] + m, pos))
    # (4.3) cubic
    R.append(entry("T27.1", df, ["-b0^2*beta2/a0^2*u^2+c0", "beta2*u^2+beta0", "0", "0", "0"],
                   E("exp(-a0*x1-b0*x2)"), controls=[("A1", 2)]))
    R.append(entry("T27.2a", df, [P["c2"], "beta0", "0", "0", "0"], E("1", "exp(-b1*x2)", "x1")))
    m, pos = ex_b()
    R.append(entry("T27.2b", df, [P["c2"], "beta0", "0", "0", "0"], ["1"] + m + ["x1"], pos))
    R.append(entry("T27.3a", df, ["c0", P["b2"], "0", "0", "0"], E("1", "exp(-a1*x1)", "x2")))
    m, pos = ex_a()
    R.append(entry("T27.3b", df, ["c0", P["b2"], "0", "0", "0"], ["1"] + m + ["x2"], pos))
    R.append(entry("T27.4a", df, [P["c2"], P["b1"], "0", "0", "0"], E("1", "x1", "x2")))
    R.append(entry("T27.4b", df, [P["c2"], P["b2"], "0", "0", "0"], E("1", "x1", "x2")))
    R.append(entry("T27.5", df, [P["c2"], P["b1"], "0", "0", "0"], E("1", "x1", "x2", "x2^2/2")))
    R.append(entry("T27.6", df, [P["c1"], P["b2"], "0", "0", "0"], E("1", "x1", "x1^2/2", "x2")))
    m, pos = trig("b1", "x2")
    R.append(entry("T27.7", df, [P["c2"], "beta0", "0", "0", "0"], ["1", "x1"] + m, pos))
    m, pos = trig("a1", "x1")
    R.append(entry("T27.8", df, ["c0", P["b2"], "0", "0", "0"], ["1", "x2"] + m, pos))
    return R


class _Dumper(yaml.SafeDumper):
    pass


def _str(d, s):
    return d.represent_scalar("tag:yaml.org,2002:str", s, style='"' if any(c in s for c in ":#{}[],&*?|>!%@`'") or s[:1] in "-+" else None)


_Dumper.add_representer(str, _str)


def write(name, header, rows):
    body = yaml.dump(rows, Dumper=_Dumper, sort_keys=False, width=120, allow_unicode=True)
    body = body.replace("\n- id:", "\n\n- id:")
    (OUT / name).write_text(header + body, encoding="utf-8")


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    write("tables_2_15.yaml", "# Operator families of the full convection-reaction-diffusion operator\n"
          "# (Tables 2-15) with their invariant subspaces.  Schema: docs/corpus_format.md\n\n", rows_2_15())
    write("tables_17_27.yaml", "# Operator families of the convection-diffusion, reaction-diffusion and\n"
          "# diffusion special cases (Tables 17-27).  Schema: docs/corpus_format.md\n\n", rows_17_27())
    print(len(rows_2_15()), len(rows_17_27()))
