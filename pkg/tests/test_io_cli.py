import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import functions
from qspectra import cli
from qspectra.domain import DiscreteFunction, DomainSpec
from qspectra.explorer import gen_fm
from qspectra.io import (
    TruthTableError,
    dumps_report,
    format_truth_table,
    parse_truth_table,
    read_truth_table,
    round_sig,
    write_truth_table,
)

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# ---------------------------------------------------------------------------
# truth-table files
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("kind", ["two_valued_pm1", "three_valued_omega", "boolean01", "integer", "complex"])
@given(data=st.data())
def test_format_parse_roundtrip(kind, data):
    f = data.draw(functions(kind, max_q=4, max_n=2))
    text = format_truth_table(f)
    g = parse_truth_table(text)
    assert g == f
    assert format_truth_table(g) == text
    assert "\r" not in text and text.endswith("\n")


def test_file_roundtrip(tmp_path):
    f = gen_fm(2, 3)
    path = tmp_path / "fm.txt"
    write_truth_table(f, path)
    assert read_truth_table(path) == f
    assert path.read_bytes() == (GOLDEN / "fm_m2_n3.txt").read_bytes()


def test_header_format():
    text = format_truth_table(DiscreteFunction(DomainSpec(3, 1), "three_valued_omega", [0, 1, 2]))
    assert text == "q 3 n 1 kind omega3\n0\n1\n2\n"


@pytest.mark.parametrize("text,line,column,fragment", [
    ("", 1, 1, "empty"),
    ("q 3 n 2\n", 1, 1, "header"),
    ("q x n 2 kind pm1\n", 1, 3, "integer"),
    ("q 3 n 1 kind foo\n1\n1\n1\n", 1, 14, "unknown kind"),
    ("q 3 n 2 kind pm1\n1\n1\n", 4, 1, "q^n = 9"),
    ("q 2 n 1 kind pm1\n1\n1\n1\n", 4, 1, "q^n = 2"),
    ("q 2 n 1 kind pm1\n1\n  0\n", 3, 3, "not allowed"),
    ("q 2 n 1 kind int\n1\nabc\n", 3, 1, "integer"),
    ("q 2 n 1 kind complex\n1 0\n1\n", 3, 2, "<re> <im>"),
    ("q 1 n 1 kind int\n1\n", 1, 1, "q >= 2"),
])
def test_parse_errors(text, line, column, fragment):
    with pytest.raises(TruthTableError) as exc:
        parse_truth_table(text)
    assert exc.value.line == line
    assert exc.value.column == column
    assert fragment in str(exc.value)


def test_round_sig_and_dumps():
    assert round_sig(1 / 3) == 0.333333333333
    assert round_sig(float("nan")) is None
    doc = json.loads(dumps_report({"a": np.float64(2.0) / 3, "b": np.int64(4), "c": np.bool_(True)}))
    assert doc == {"a": 0.666666666667, "b": 4, "c": True}


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------

def test_gen_fm(capsys):
    code, out, _ = run(capsys, "gen", "--family", "fm", "--m", "2", "--n", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("q 4 n 3")
    assert len(lines) == 65
    assert out == (GOLDEN / "fm_m2_n3.txt").read_text()


def test_gen_other_families(capsys, tmp_path):
    _, out, _ = run(capsys, "gen", "--family", "xor_all", "--n", "4")
    assert out.startswith("q 2 n 4 kind bool01\n")
    _, out, _ = run(capsys, "gen", "--family", "character", "--z", "1,2", "--q", "3")
    assert out.startswith("q 3 n 2 kind complex\n")
    path = tmp_path / "d.txt"
    assert cli.main(["gen", "--family", "dictator", "--q", "3", "--n", "2", "--i", "2", "-o", str(path)]) == 0
    assert read_truth_table(path).kind == "two_valued_pm1"
    _, out, _ = run(capsys, "gen", "--family", "fm", "--m", "1", "--n", "1", "--pm1")
    assert out == "q 4 n 1 kind pm1\n-1\n-1\n1\n1\n"


def test_gen_errors(capsys):
    assert run(capsys, "gen", "--family", "majority", "--n", "4")[0] == 2
    assert run(capsys, "gen", "--family", "fm", "--m", "3", "--n", "2")[0] == 2
    assert run(capsys, "gen", "--family", "character", "--q", "3")[0] == 2
    assert run(capsys, "gen", "--family", "xor_all")[0] == 2
    assert run(capsys, "gen", "--family", "bogus", "--n", "2")[0] == 2


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def test_analyze_fm(capsys):
    code, out, _ = run(capsys, "analyze", str(GOLDEN / "fm_m2_n3.txt"))
    assert code == 0
    rep = json.loads(out)
    assert rep["schema_version"] == 1
    assert rep["sensitivity"]["t"] == 2
    assert rep["sensitivity"]["relevant_variables"] == [1, 2]
    assert rep["degrees"]["deg0"] == rep["degrees"]["deg2"] == 2
    entry = next(e for e in rep["bounds"]["entries"] if e["name"] == "cycle_deg2")
    assert abs(entry["value"] - np.pi ** 2) < 1e-9 and entry["holds"]
    assert rep["analysed_as"] == {"family": "two", "recoding": "1-2f"}
    assert all(rep["checks"].values())


def test_analyze_constant(capsys):
    code, out, _ = run(capsys, "analyze", str(GOLDEN / "const_q3_n2.txt"))
    rep = json.loads(out)
    assert code == 0
    assert rep["sensitivity"]["t"] == 0
    assert rep["bounds"]["entries"]
    assert all(not e["applicable"] and e["value"] is None for e in rep["bounds"]["entries"])


def test_analyze_bad_count(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("q 3 n 2 kind pm1\n1\n-1\n")
    code, _, err = run(capsys, "analyze", str(path))
    assert code == 2
    assert "q^n = 9" in err


def test_analyze_complex(capsys, tmp_path):
    path = tmp_path / "ch.txt"
    cli.main(["gen", "--family", "character", "--z", "1,2", "--q", "3", "-o", str(path)])
    capsys.readouterr()
    code, _, err = run(capsys, "analyze", str(path))
    assert code == 2 and "--no-sensitivity" in err
    code, out, _ = run(capsys, "analyze", str(path), "--no-sensitivity")
    rep = json.loads(out)
    assert code == 0 and rep["degrees"]["deg0"] == 2 and rep["bounds"] is None


def test_analyze_three_valued_and_integer(capsys, tmp_path):
    path = tmp_path / "w.txt"
    path.write_text("q 3 n 1 kind omega3\n0\n1\n2\n")
    code, out, _ = run(capsys, "analyze", str(path))
    rep = json.loads(out)
    assert code == 0
    assert rep["sensitivity"]["I_cycle"] == 3 and rep["sensitivity"]["I_hamming"] == 3
    names = [e["name"] for e in rep["bounds"]["entries"]]
    assert names == ["cycle_deg1", "cycle_deg2", "hamming_deg0"]
    path.write_text("q 3 n 1 kind int\n5\n5\n7\n")
    rep = json.loads(run(capsys, "analyze", str(path))[1])
    assert rep["analysed_as"]["recoding"] == "5->1, 7->-1"
    assert rep["bounds"]["t"] == 1
    path.write_text("q 3 n 1 kind int\n1\n2\n3\n")
    rep = json.loads(run(capsys, "analyze", str(path))[1])
    assert rep["bounds"]["family"] is None


def test_analyze_boolean_block(capsys, tmp_path):
    path = tmp_path / "x.txt"
    cli.main(["gen", "--family", "xor_all", "--n", "3", "-o", str(path)])
    capsys.readouterr()
    rep = json.loads(run(capsys, "analyze", str(path))[1])
    assert rep["boolean"]["algebraic_degree"] == 1
    assert rep["boolean"]["anf_monomials"] == [[3], [2], [1]]
    assert rep["sensitivity"]["t"] == 3


def test_analyze_figures(capsys, tmp_path):
    out = tmp_path / "figs"
    assert run(capsys, "analyze", str(GOLDEN / "fm_m2_n3.txt"), "--figures", str(out))[0] == 0
    assert (out / "spectrum_by_weight.png").stat().st_size > 0
    assert (out / "mixed_edges.png").stat().st_size > 0


def test_analyze_missing_file(capsys, tmp_path):
    assert run(capsys, "analyze", str(tmp_path / "none.txt"))[0] == 2


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

def test_spectrum_constant(capsys):
    code, out, _ = run(capsys, "spectrum", str(GOLDEN / "const_q3_n2.txt"))
    assert code == 0
    assert out == "z=(0,0)\tW=9\t|W|^2=81\n"


def test_spectrum_h(capsys):
    _, out, _ = run(capsys, "spectrum", str(GOLDEN / "h_q4.txt"))
    assert out == (GOLDEN / "h_q4.spectrum").read_text()
    assert "z=(2)" not in out


def test_spectrum_character(capsys, tmp_path):
    path = tmp_path / "ch.txt"
    cli.main(["gen", "--family", "character", "--z", "1,2", "--q", "3", "-o", str(path)])
    capsys.readouterr()
    _, out, _ = run(capsys, "spectrum", str(path))
    assert out == "z=(1,-1)\tW=9\t|W|^2=81\n"


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "--law", "theorem1", "--q", "3", "--n", "2", "--kind", "two", "--exhaustive")
    doc = json.loads(out)
    assert code == 0 and doc["functions"] == 512 and doc["violations"] == 0
    assert out == (GOLDEN / "verify_theorem1_q3_n2.json").read_text()
    code, out, _ = run(capsys, "verify", "--law", "parseval", "--q", "5", "--n", "3", "--kind", "three",
                       "--samples", "1000", "--seed", "7")
    assert code == 0 and json.loads(out)["violations"] == 0
    code, out, _ = run(capsys, "verify", "--law", "spectral_I", "--q", "3", "--n", "2", "--kind", "three",
                       "--exhaustive")
    doc = json.loads(out)
    assert code == 0 and doc["functions"] == 19683 and doc["violations"] == 0


def test_verify_law_lists(capsys):
    _, out, _ = run(capsys, "verify", "--law", "parseval,bounds", "--law", "support", "--q", "3", "--n", "1",
                    "--kind", "two", "--exhaustive", "--format", "tsv")
    assert out.splitlines() == ["law\tchecked\tviolations", "parseval\t8\t0", "bounds\t6\t0",
                                "support\t8\t0", "total\t8\t0"]


def test_verify_usage_errors(capsys, monkeypatch):
    assert run(capsys, "verify", "--q", "5", "--n", "3", "--kind", "two", "--exhaustive")[0] == 2
    assert run(capsys, "verify", "--q", "3", "--n", "2", "--kind", "two")[0] == 2
    assert run(capsys, "verify", "--law", "nope", "--q", "3", "--n", "2", "--kind", "two", "--exhaustive")[0] == 2
    assert run(capsys, "verify", "--q", "3", "--n", "2", "--kind", "bool", "--exhaustive")[0] == 2
    assert run(capsys, "verify", "--q", "3", "--n", "2", "--kind", "two", "--samples", "0")[0] == 2
    monkeypatch.setenv("QSPECTRA_THREADS", "many")
    assert run(capsys, "verify", "--q", "3", "--n", "1", "--kind", "two", "--exhaustive")[0] == 2


def test_verify_violation_exit(capsys, monkeypatch):
    from qspectra import bounds as bnd

    monkeypatch.setattr(bnd, "TOL", -1e6)
    code, out, _ = run(capsys, "verify", "--law", "bounds", "--q", "3", "--n", "1", "--kind", "two", "--exhaustive")
    doc = json.loads(out)
    assert code == 1
    assert doc["laws"]["bounds"]["first_counterexample"]["table"]


def test_verify_threads_env(capsys, monkeypatch):
    argv = ["verify", "--law", "all", "--q", "4", "--n", "2", "--kind", "three", "--samples", "3000", "--seed", "5"]
    base = run(capsys, *argv, "--threads", "1")[1]
    monkeypatch.setenv("QSPECTRA_THREADS", "4")
    assert run(capsys, *argv)[1] == base


def test_verify_figures(capsys, tmp_path):
    out = tmp_path / "figs"
    run(capsys, "verify", "--q", "3", "--n", "2", "--kind", "two", "--exhaustive", "--figures", str(out))
    assert (out / "law_counts.png").exists() and (out / "tightness.png").exists()


def test_help_exit(capsys):
    assert cli.main(["--help"]) == 0
    assert cli.main([]) == 2
