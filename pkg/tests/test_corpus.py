import dataclasses
import random
import warnings

import pytest

from artifact.corpus import (CorpusError, Mutation, load_corpus, run_corpus, run_entry, shipped_files)
from artifact.invariance import check_invariance, determining_system

T2_15 = load_corpus("tables_2_15")
T17_27 = load_corpus("tables_17_27")
BY_ID = {e.id: e for e in T2_15 + T17_27}


def with_part(entry, name, text):
    parts = tuple((p, text if p == name else t) for p, t in entry.parts)
    return dataclasses.replace(entry, parts=parts, controls=())


def test_shipped_files():
    assert shipped_files() == ["tables_17_27.yaml", "tables_2_15.yaml"]
    assert len(T2_15) >= 40 and len(T17_27) >= 35
    assert len(BY_ID) == len(T2_15) + len(T17_27)


def test_every_class_is_present():
    classes = {e.eq_class for e in T17_27}
    assert classes == {"convection_diffusion", "reaction_diffusion", "diffusion"}
    assert {e.eq_class for e in T2_15} == {"full"}


def test_table3_case1():
    r = run_entry(BY_ID["T3.1"], trials=5)
    assert r.verdict == "invariant" and r.trials == 5 and r.max_residual == 0 and r.probe_agrees


def test_table2_case1_and_broken_tie():
    r = run_entry(BY_ID["T2.1a"], trials=5)
    assert r.verdict == "invariant"
    (c,) = r.controls
    assert c.label == "C[u^2]+1" and c.flagged and c.witness


def test_numeric_entry_runs_numeric():
    e = BY_ID["T9.4"]
    r = run_entry(e, trials=3)
    assert e.mode == "numeric" and r.mode == "numeric" and r.verdict == "invariant"
    assert r.max_residual <= 1e-9


def test_t2_1b_as_listed_fails_and_encoded_form_holds():
    listed = with_part(BY_ID["T2.1b"], "A1", "c0")
    assert run_entry(listed, trials=3, probe=False).verdict == "not_invariant"
    assert run_entry(BY_ID["T2.1b"], trials=3).verdict == "invariant"
    # the listed row survives only on the c1 = 0 slice
    b = listed.sample(random.Random(1))
    b["c1"] = 0
    op, basis = listed.instantiate(b)
    assert check_invariance(op, basis).invariant


def test_t9_4_as_listed_fails():
    listed = with_part(BY_ID["T9.4"], "A1", "d2/(3*d0)*u^2+c0")
    assert run_entry(listed, trials=3, probe=False).verdict == "not_invariant"


def test_verdicts_independent_of_seed():
    subset = T2_15[:12]
    a = run_corpus(subset, trials=2, seed=1, probe=False)
    b = run_corpus(subset, trials=2, seed=99, probe=False)
    assert a.verdicts() == b.verdicts()


def test_report_is_deterministic():
    subset = T17_27[:10]
    a = run_corpus(subset, trials=2, seed=7).to_text()
    b = run_corpus(list(reversed(subset)), trials=2, seed=7).to_text()
    assert a == b
    assert a.splitlines()[0] == "corpus.entries=10"
    assert a.rstrip().endswith("corpus.status=PASS")


def test_parallel_matches_serial():
    subset = T2_15[:6]
    assert run_corpus(subset, trials=1, seed=3, workers=2).to_text() == run_corpus(subset, trials=1, seed=3).to_text()


def test_bad_entry_is_isolated(tmp_path):
    f = tmp_path / "c.yaml"
    f.write_text("""
- id: T1.1
  class: full
  C: "k*u"
  subspace: {members: ["1", "x1"]}
  free: k
- id: T1.2
  class: full
  A1: "a*u"
  subspace: {members: ["1"]}
  free: a
""")
    good, ok = load_corpus(f)
    broken = with_part(ok, "A1", "1/(a - a)*u")
    rep = run_corpus([broken, good], trials=2)
    v = dict(rep.verdicts())
    assert v == {"T1.1": "invariant", "T1.2": "error"}
    assert "corpus.status=FAIL" in rep.to_text()


def test_unparsable_expression_rejected_at_load(tmp_path):
    f = tmp_path / "c.yaml"
    f.write_text("- {id: A, class: full, A1: '1/(a - a)*u', subspace: [1], free: a}")
    with pytest.raises(CorpusError, match="line 1"):
        load_corpus(f)


def test_determining_system_vanishes_at_drawn_rows():
    rng = random.Random(0)
    for e in T2_15[:15]:
        if e.mode != "rational":
            continue
        op, basis = e.instantiate(e.sample(rng))
        assert len(determining_system(op, basis)) == 0, e.id


@pytest.mark.parametrize("text,msg", [
    ("- {id: A, class: full, subspace: [1], bogus: 1}", "unknown field"),
    ("- {id: A, class: weird, subspace: [1]}", "class must be"),
    ("- {id: A, class: diffusion, C: 'u', subspace: [1]}", "requires C = 0"),
    ("- {id: A, class: full, subspace: [1], C: 'k*u'}", "unknown symbol"),
    ("- {id: A, class: full}", "missing field"),
    ("- {id: A, class: full, subspace: [1]}\n- {id: A, class: full, subspace: [1]}", "duplicate"),
    ("- {id: A, class: full, subspace: {type: TypeIII, ode1: [0], ode2: [0]}}", "TypeI or TypeII"),
    ("- {id: A, class: full, subspace: [1], controls: [{part: D, power: 1}]}", "bad control"),
    ("- {id: A, class: full, subspace: [1], mode: fuzzy}", "mode must be"),
    ("- {id: A, class: full, subspace: ['exp(x1*x2)']}", "linear"),
    ("{id: A}", "top level"),
])
def test_schema_errors(tmp_path, text, msg):
    f = tmp_path / "bad.yaml"
    f.write_text(text)
    with pytest.raises(CorpusError, match=msg):
        load_corpus(f)


def test_line_numbers_in_diagnostics(tmp_path):
    f = tmp_path / "bad.yaml"
    f.write_text("- {id: A, class: full, subspace: [1]}\n\n- {id: B, class: full, subspace: [1], C: 'q*u'}\n")
    with pytest.raises(CorpusError, match=r"line 3 \(B\)"):
        load_corpus(f)


def test_empty_file_warns(tmp_path):
    f = tmp_path / "empty.yaml"
    f.write_text("")
    with pytest.warns(UserWarning, match="empty"):
        assert load_corpus(f) == []


def test_missing_file():
    with pytest.raises((CorpusError, OSError)):
        load_corpus("no_such_corpus")


def test_trials_validated():
    with pytest.raises(ValueError):
        run_corpus(T2_15[:1], trials=0)


def test_mutation_label():
    assert Mutation("B1", 2, "1").label == "B1[u^2]+1"
