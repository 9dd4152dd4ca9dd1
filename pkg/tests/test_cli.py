import io
import subprocess
import sys

import pytest

from collusive.agonal import consistency_report
from collusive.balance import SignedFrame, analyze
from collusive.cli import main
from collusive.relations import is_collusion, is_collusive_fast
from collusive.textio import read_file

from conftest import FIXTURES, GOLDEN, ROOT


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), stdout=out)
    return code, out.getvalue()


def results(text):
    pairs = [line.split(" ", 2)[1:] for line in text.splitlines() if line.startswith("RESULT ")]
    keys = [k for k, _ in pairs]
    assert len(keys) == len(set(keys)), "duplicate RESULT key"
    return dict(pairs)


def test_three_cycle_is_a_collusion():
    code, text = run("relation", str(FIXTURES / "three_cycle.rel"), "--check", "collusion")
    assert code == 0
    assert "RESULT collusion true" in text.splitlines()


def test_r2_protection_not_transitive():
    code, text = run("relation", str(FIXTURES / "fig3_R2.rel"), "--check", "protection-transitive")
    assert code == 0
    assert results(text) == {"protection_transitive": "false"}
    assert "WITNESS protection_transitive (1,3,2)" in text


def test_emit_protection_dump():
    _, text = run("relation", str(FIXTURES / "consistency.rel"), "--check", "consistent", "--emit-protection")
    dump = text.split("PROTECTION\n", 1)[1]
    assert "rel protection\n0 0\n1 0\n" in dump
    assert "rel actual-protection\nuniverse" not in dump


def test_malformed_file_exit_2(capsys):
    code, _ = run("relation", str(FIXTURES / "malformed.rel"))
    assert code == 2
    assert "line 4" in capsys.readouterr().err


def test_unknown_check_exit_2():
    assert run("relation", str(FIXTURES / "three_cycle.rel"), "--check", "wobbly")[0] == 2


@pytest.mark.parametrize("path", sorted(FIXTURES.glob("*.rel")))
def test_relation_verdicts_match_library(path):
    if path.name == "malformed.rel":
        return
    r = read_file(path).relation()
    _, text = run("relation", str(path))
    got = results(text)
    report = consistency_report(r)
    assert got == {
        "collusive": str(is_collusive_fast(r)).lower(),
        "collusion": str(is_collusion(r)).lower(),
        "consistent": str(report.consistent).lower(),
        "complete": str(report.complete).lower(),
    }


@pytest.mark.parametrize("path", sorted(FIXTURES.glob("fig4_*.frame")) + [FIXTURES / "planted.frame"])
def test_balance_verdicts_match_library(path):
    doc = read_file(path)
    report = analyze(SignedFrame(doc.universe, doc.relations["R+"], doc.relations["R-"]))
    for mode, verdicts in (("strong", report.strong_verdicts()), ("weak", report.weak_verdicts())):
        code, text = run("balance", str(path), "--mode", mode)
        assert code == 0
        got = results(text)
        for method, value in verdicts.items():
            assert got[method] == str(value).lower()
        assert got["agreement"] == "true"


def test_planted_frame_blocks():
    _, text = run("balance", str(FIXTURES / "planted.frame"))
    assert [l for l in text.splitlines() if l.startswith("BLOCK")] == ["BLOCK {0,1,2}", "BLOCK {3,4}"]
    assert all(v == "true" for v in results(text).values() if v in ("true", "false"))


def test_d_triad_all_false():
    for mode in ("strong", "weak"):
        got = results(run("balance", str(FIXTURES / "fig4_d.frame"), "--mode", mode)[1])
        assert [got[m] for m in ("local", "partition", "cycle", "collusion")] == ["false"] * 4


def test_balance_hypothesis_and_axiom_failures(capsys):
    code, _ = run("balance", str(FIXTURES / "sparse.frame"), "--method", "collusion")
    assert code == 3
    assert "c.c. s.s.f." in capsys.readouterr().err
    code, text = run("balance", str(FIXTURES / "bad_axiom.frame"))
    assert code == 3
    assert "VIOLATION non-overlapping (0,1)" in text


def test_modal_axiom_c_countermodel():
    code, text = run("modal", str(FIXTURES / "countermodel.rel"), "--axiom-c")
    assert code == 0
    assert "RESULT axiom_c false" in text
    assert "countermodel q={w} world=z" in text


def test_modal_formula_per_world():
    _, text = run("modal", str(FIXTURES / "countermodel.model"), "--formula", "<f R><b R>[f R] ~q -> [f R] ~q")
    assert [l for l in text.splitlines() if l.startswith("WORLD")] == [
        "WORLD x true", "WORLD y true", "WORLD z false", "WORLD w true"]


def test_modal_parse_error_exit_2():
    assert run("modal", str(FIXTURES / "countermodel.model"), "--formula", "<f R> (q")[0] == 2


def test_prove_axiom_c():
    code, text = run("prove", "--preset", "axiom-C", "--rules", "collusive:R")
    assert code == 0
    got = results(text)
    assert got["proved"] == "true" and got["status"] == "proved" and got["derivation_nodes"] == "7"
    assert text.endswith((GOLDEN / "axiom_C.txt").read_text(encoding="utf-8"))


def test_prove_axiom_w_latex():
    code, text = run("--format", "latex", "prove", "--preset", "axiom-W",
                     "--rules", "refl:R+,symm:R+,symm:R-,collusive:R+,nover:R+:R-,cc:R+:R-")
    assert code == 0 and "RESULT proved true" in text
    assert "\\begin{prooftree}" in text and "\\BinaryInfC" in text


def test_prove_saturated_and_budget():
    code, text = run("prove", "x : <f R> p |- x : [f R] p")
    assert code == 0 and results(text)["status"] == "saturated"
    assert "COUNTERSEQUENT" in text
    code, text = run("prove", "x : [f R] p |- x : p", "--rules", "total:R", "--max-fresh", "2")
    assert code == 4 and "STATS" in text


def test_prove_bad_sequent_exit_2():
    assert run("prove", "x : (p |- x : p")[0] == 2


def test_conjecture_small(tmp_path):
    target = tmp_path / "out.txt"
    code, text = run("conjecture", "--max-n", "3", "--output", str(target))
    assert code == 0
    assert target.read_text() == text
    assert text.splitlines()[-1] == "result counterexamples 6"


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "collusive", "relation", str(FIXTURES / "k_ab.rel"),
                           "--check", "partition"], capture_output=True, text=True, cwd=ROOT)
    assert proc.returncode == 0
    assert proc.stdout.splitlines() == ["RESULT partition true", "BLOCK {1,2}", "BLOCK {3}"]
