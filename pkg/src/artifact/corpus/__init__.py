"""Machine-readable table entries (operator families with their invariant
subspaces) and a batch runner that re-verifies them on random draws."""
from __future__ import annotations

import hashlib
import math
import random
import warnings
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import yaml

from ..crdop import CRDOperator, UPoly
from ..exprparse import ParseError, parse_expr, parse_kpoly, parse_number, symbols_in
from ..funcalg import AlgebraError, DependentBasisError, KPoly
from ..invariance import check_invariance, numeric_invariance_probe
from ..subspace import LinearODE, SubspaceBasis, build_type1, build_type2

PARTS = ("A1", "A2", "B1", "B2", "C")
CLASSES = {
    "full": (),
    "convection_diffusion": ("C",),
    "reaction_diffusion": ("B1", "B2"),
    "diffusion": ("B1", "B2", "C"),
}
FIELDS = {"id", "class", *PARTS, "subspace", "free", "positive", "nonzero", "derived",
          "constraints", "mode", "erratum", "controls", "note"}
NUMERIC_TOL = 1e-9
MAX_DRAWS = 500


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class Mutation:
    part: str
    power: int
    delta: str = "1"

    @property
    def label(self) -> str:
        return f"{self.part}[u^{self.power}]+{self.delta}"


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    eq_class: str
    parts: tuple            # ((name, text), ...) in PARTS order
    subspace: tuple         # ("members", (text, ...)) or (kind, ode1, ode2)
    free: tuple
    positive: tuple = ()
    nonzero: tuple = ()
    derived: tuple = ()     # ((name, text), ...), evaluated in order
    constraints: tuple = ()
    mode: str = "rational"
    erratum: str = ""
    controls: tuple = ()
    line: int = 0

    def part(self, name: str) -> str:
        return dict(self.parts)[name]

    def texts(self) -> list:
        out = [t for _, t in self.parts] + [t for _, t in self.derived]
        out += list(self.positive) + list(self.nonzero) + list(self.constraints)
        if self.subspace[0] == "members":
            out += list(self.subspace[1])
        else:
            out += list(self.subspace[1]) + list(self.subspace[2])
        return out

    # -------------------------------------------------------- sampling

    def sample(self, rng: random.Random) -> dict:
        """Rational draw with numerator, denominator in [1, 9] and a random
        sign per free symbol, rejecting degenerate draws."""
        for _ in range(MAX_DRAWS):
            b = {s: Fraction(rng.choice((-1, 1)) * rng.randint(1, 9), rng.randint(1, 9)) for s in self.free}
            try:
                b = self._derive(b, numeric=self.mode == "numeric")
            except (ParseError, ZeroDivisionError, AlgebraError):
                continue
            if all(parse_number(e, b) > 0 for e in self.positive) and \
                    all(parse_number(e, b) != 0 for e in self.nonzero):
                return b
        raise CorpusError(f"{self.id}: no admissible parameter draw in {MAX_DRAWS} attempts")

    def _derive(self, b: dict, numeric: bool) -> dict:
        b = dict(b)
        for name, text in self.derived:
            b[name] = parse_number(text, b, allow_float=numeric)
        return b

    def instantiate(self, bindings: dict, numeric: bool = False,
                    mutation: Mutation | None = None) -> tuple:
        b = {k: (float(v) if numeric else v) for k, v in bindings.items()}
        for c in self.constraints:
            v = parse_number(c, b)
            if abs(float(v)) > 1e-12:
                raise CorpusError(f"{self.id}: constraint {c} = {v} at the draw")
        polys = {}
        for name, text in self.parts:
            p = parse_kpoly(text, b, allow_float=numeric)
            if mutation is not None and mutation.part == name:
                p = p + KPoly.var("u", mutation.power) * parse_number(mutation.delta)
            polys[name] = UPoly.from_kpoly(p, "u")
        op = CRDOperator(**polys)
        if self.subspace[0] == "members":
            basis = SubspaceBasis([parse_expr(m, b, allow_float=numeric) for m in self.subspace[1]])
        else:
            kind, c1, c2 = self.subspace
            o1 = LinearODE.make([parse_kpoly(c, b, allow_float=numeric) for c in c1], 1)
            o2 = LinearODE.make([parse_kpoly(c, b, allow_float=numeric) for c in c2], 2)
            basis = (build_type1 if kind == "TypeI" else build_type2)(o1, o2)
        return op, basis


# ---------------------------------------------------------------- loading

def _resolve(path) -> Path:
    p = Path(path)
    if p.exists():
        return p
    name = p.name if p.suffix else p.name + ".yaml"
    shipped = resources.files(__package__) / "data" / name
    if shipped.is_file():
        return Path(str(shipped))
    raise CorpusError(f"corpus file not found: {path}")


def _strs(v, where: str) -> tuple:
    if v is None:
        return ()
    if isinstance(v, str):
        return tuple(v.split())
    if not isinstance(v, list):
        raise CorpusError(f"{where}: expected a list")
    return tuple(str(x) for x in v)


def _entry(rec, line: int) -> CorpusEntry:
    where = f"line {line}"
    if not isinstance(rec, dict):
        raise CorpusError(f"{where}: entry must be a mapping")
    unknown = set(rec) - FIELDS
    if unknown:
        raise CorpusError(f"{where}: unknown field(s) {sorted(unknown)}")
    for f in ("id", "class", "subspace"):
        if f not in rec:
            raise CorpusError(f"{where}: missing field '{f}'")
    eid = str(rec["id"])
    where = f"line {line} ({eid})"
    cls = rec["class"]
    if cls not in CLASSES:
        raise CorpusError(f"{where}: class must be one of {sorted(CLASSES)}")
    parts = tuple((p, str(rec.get(p, "0"))) for p in PARTS)
    for p in CLASSES[cls]:
        if dict(parts)[p].strip() not in ("0", ""):
            raise CorpusError(f"{where}: class {cls} requires {p} = 0")
    sub = rec["subspace"]
    if isinstance(sub, list):
        subspace = ("members", tuple(str(m) for m in sub))
    elif isinstance(sub, dict) and "members" in sub:
        subspace = ("members", tuple(str(m) for m in sub["members"]))
    elif isinstance(sub, dict) and {"type", "ode1", "ode2"} <= set(sub):
        if sub["type"] not in ("TypeI", "TypeII"):
            raise CorpusError(f"{where}: subspace.type must be TypeI or TypeII")
        subspace = (sub["type"], _strs(sub["ode1"], where), _strs(sub["ode2"], where))
    else:
        raise CorpusError(f"{where}: subspace needs 'members' or 'type'/'ode1'/'ode2'")
    derived = rec.get("derived") or {}
    if not isinstance(derived, dict):
        raise CorpusError(f"{where}: derived must be a mapping")
    controls = []
    for c in rec.get("controls") or []:
        try:
            m = Mutation(str(c["part"]), int(c["power"]), str(c.get("delta", "1")))
        except (KeyError, TypeError, ValueError):
            raise CorpusError(f"{where}: controls need part, power and optional delta") from None
        if m.part not in PARTS or not 0 <= m.power <= 4:
            raise CorpusError(f"{where}: bad control {c}")
        controls.append(m)
    mode = rec.get("mode", "rational")
    if mode not in ("rational", "numeric"):
        raise CorpusError(f"{where}: mode must be rational or numeric")
    e = CorpusEntry(eid, cls, parts, subspace, _strs(rec.get("free"), where),
                    _strs(rec.get("positive"), where) if not isinstance(rec.get("positive"), str)
                    else (rec["positive"],),
                    _strs(rec.get("nonzero"), where) if not isinstance(rec.get("nonzero"), str)
                    else (rec["nonzero"],),
                    tuple((str(k), str(v)) for k, v in derived.items()),
                    _strs(rec.get("constraints"), where) if not isinstance(rec.get("constraints"), str)
                    else (rec["constraints"],),
                    mode, str(rec.get("erratum", "")), tuple(controls), line)
    known = set(e.free) | {n for n, _ in e.derived} | {"u"}
    for text in e.texts():
        try:
            missing = symbols_in(text) - known
        except ParseError as exc:
            raise CorpusError(f"{where}: {exc}") from None
        if missing:
            raise CorpusError(f"{where}: unknown symbol(s) {sorted(missing)} in {text!r}")
    # parse every expression once at an admissible draw
    try:
        e.instantiate(e.sample(random.Random(0)), numeric=e.mode == "numeric")
    except DependentBasisError:
        pass
    except (ParseError, AlgebraError, CorpusError, ZeroDivisionError) as exc:
        raise CorpusError(f"{where}: {exc}") from None
    return e


def load_corpus(path) -> list:
    """Parse and validate a corpus file (a YAML list of entry records)."""
    p = _resolve(path)
    text = p.read_text(encoding="utf-8")
    try:
        root = yaml.compose(text)
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise CorpusError(f"{p}: {exc}") from None
    if data is None:
        warnings.warn(f"{p}: empty corpus file", stacklevel=2)
        return []
    if not isinstance(data, list):
        raise CorpusError(f"{p}: top level must be a list of entries")
    entries = [_entry(rec, node.start_mark.line + 1) for rec, node in zip(data, root.value)]
    ids = [e.id for e in entries]
    dup = {i for i in ids if ids.count(i) > 1}
    if dup:
        raise CorpusError(f"{p}: duplicate ids {sorted(dup)}")
    return entries


# ---------------------------------------------------------------- running

@dataclass
class ControlResult:
    label: str
    flagged: bool
    witness: str = ""
    message: str = ""


@dataclass
class EntryResult:
    id: str
    verdict: str                 # invariant | not_invariant | error
    trials: int = 0
    mode: str = "rational"
    max_residual: float = 0.0
    probe_agrees: bool = True
    digest: str = ""
    message: str = ""
    controls: list = field(default_factory=list)


@dataclass
class CorpusReport:
    results: list
    trials: int
    mode: str
    seed: int

    @property
    def n_invariant(self) -> int:
        return sum(r.verdict == "invariant" for r in self.results)

    @property
    def all_invariant(self) -> bool:
        return self.n_invariant == len(self.results)

    @property
    def controls(self) -> list:
        return [c for r in self.results for c in r.controls]

    @property
    def all_controls_flagged(self) -> bool:
        return all(c.flagged for c in self.controls)

    def verdicts(self) -> tuple:
        return tuple((r.id, r.verdict) for r in self.results)

    def to_text(self) -> str:
        """Flat key-value report; stable field names and order."""
        lines = [f"corpus.entries={len(self.results)}", f"corpus.trials={self.trials}",
                 f"corpus.mode={self.mode}", f"corpus.seed={self.seed}",
                 f"corpus.invariant={self.n_invariant}",
                 f"corpus.controls={len(self.controls)}",
                 f"corpus.controls_flagged={sum(c.flagged for c in self.controls)}",
                 f"corpus.probe_agreement={sum(r.probe_agrees for r in self.results)}"]
        for r in self.results:
            k = f"entry.{r.id}"
            lines += [f"{k}.verdict={r.verdict}", f"{k}.mode={r.mode}", f"{k}.trials={r.trials}",
                      f"{k}.max_residual={r.max_residual:.3e}", f"{k}.probe_agrees={str(r.probe_agrees).lower()}",
                      f"{k}.psi_digest={r.digest}"]
            if r.message:
                lines.append(f"{k}.message={r.message}")
            for c in r.controls:
                lines.append(f"{k}.control.{c.label}={'flagged' if c.flagged else 'MISSED'}")
                if c.witness:
                    lines.append(f"{k}.control.{c.label}.witness={c.witness}")
        lines.append(f"corpus.status={'PASS' if self.all_invariant and self.all_controls_flagged else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _entry_rng(seed: int, eid: str) -> random.Random:
    return random.Random(zlib.crc32(f"{seed}:{eid}".encode()))


def _fmt_witness(w: dict | None) -> str:
    if not w:
        return ""
    return ",".join(f"{k}:{v}" for k, v in sorted(w.items()))


def run_entry(entry: CorpusEntry, trials: int = 5, mode: str = "rational", seed: int = 0,
              probe: bool = True) -> EntryResult:
    numeric = mode == "numeric" or entry.mode == "numeric"
    res = EntryResult(entry.id, "invariant", 0, "numeric" if numeric else "rational")
    rng = _entry_rng(seed, entry.id)
    h = hashlib.sha256()
    flagged = {m: True for m in entry.controls}
    witnesses = {m: "" for m in entry.controls}
    try:
        for _ in range(trials):
            for _attempt in range(MAX_DRAWS):
                b = entry.sample(rng)
                try:
                    op, basis = entry.instantiate(b, numeric)
                    break
                except DependentBasisError:
                    continue
            else:
                raise CorpusError(f"{entry.id}: every draw gave a dependent basis")
            rep = check_invariance(op, basis, NUMERIC_TOL if numeric else 0.0, seed)
            res.trials += 1
            res.max_residual = max(res.max_residual, rep.residual_norm)
            h.update("|".join(str(p) for p in rep.psi).encode())
            if not rep.invariant:
                res.verdict = "not_invariant"
                res.message = f"residual {rep.residual} at {_fmt_witness(b)}"
            if probe:
                pb = {k: float(v) for k, v in b.items()}
                if numeric_invariance_probe(op, basis, pb, seed) != rep.invariant:
                    res.probe_agrees = False
            for m in entry.controls:
                mop, _ = entry.instantiate(b, numeric, m)
                mrep = check_invariance(mop, basis, NUMERIC_TOL if numeric else 0.0, seed)
                if mrep.invariant:
                    flagged[m] = False
                elif not witnesses[m]:
                    witnesses[m] = _fmt_witness(mrep.witness) or "none"
    except Exception as exc:       # isolate per entry
        res.verdict = "error"
        res.message = f"{type(exc).__name__}: {exc}"
    res.digest = h.hexdigest()[:16]
    res.controls = [ControlResult(m.label, flagged[m] and res.verdict != "error", witnesses[m])
                    for m in entry.controls]
    return res


def _run_one(args):
    return run_entry(*args)


def run_corpus(entries, trials: int = 5, mode: str = "rational", seed: int = 0,
               probe: bool = True, workers: int = 1) -> CorpusReport:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if mode not in ("rational", "numeric"):
        raise ValueError("mode must be rational or numeric")
    ordered = sorted(entries, key=lambda e: _sort_key(e.id))
    jobs = [(e, trials, mode, seed, probe) for e in ordered]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    return CorpusReport(results, trials, mode, seed)


def _sort_key(eid: str):
    out = []
    for part in eid.replace("T", "").split("."):
        digits = "".join(ch for ch in part if ch.isdigit())
        out.append((int(digits) if digits else math.inf, part))
    return out


def shipped_files() -> list:
    return sorted(p.name for p in (resources.files(__package__) / "data").iterdir() if p.name.endswith(".yaml"))
