import pytest

from src.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, main, run_command
from src.causal.model_io import read_model
from tests.conftest import FIXTURES

TWO = str(FIXTURES / "two-binary.sig")
THREE = str(FIXTURES / "three-binary.sig")


def model_file(name):
    return str(FIXTURES / f"{name}.model")


def ok(*argv):
    result = run_command(list(argv))
    assert result.code == EXIT_OK, result.stderr
    return result.stdout


def test_parse_prints_canonical_text_and_class():
    assert ok("parse", TWO, "[X <- 1] ( Y() = 0 )") == "[X<-1](Y()=0)\nclass: GP\n"
    assert ok("parse", TWO, "[](X()=0 -> Y()=0)").endswith("class: PLUS\n")


def test_formula_from_file(tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("<>(X()=0)\n", encoding="utf-8")
    assert ok("parse", TWO, f"@{path}") == "<>(X()=0)\nclass: UNIQ\n"


def test_solve():
    assert ok("solve", model_file("push-pull"), "--do", "X<-1") == "X=1 Y=-1\n"
    assert ok("solve", model_file("mod3"), "--do", "X0<-1") == "X0=1 X1=2 X2=0\n"
    assert len(ok("solve", model_file("xor3")).splitlines()) == 4
    assert ok("solve", model_file("xor3"), "--do", "X<-1;Y<-0") == "X=1 Y=0 Z=1\n"


def test_check():
    assert ok("check", model_file("copycat"), "<>(X()=0) & <>(X()=1)") == "true\n"
    assert ok("check", model_file("copycat"), "[](X()=0) | [](X()=1)") == "false\n"


@pytest.mark.parametrize(
    "name, expected",
    [("push-pull", "UNIQ (not REC)"), ("mod3", "UNIQ (not REC)"), ("copycat", "ALL (not UNIQ)")],
)
def test_classify(name, expected):
    assert ok("classify", model_file(name)) == expected + "\n"


def test_affects():
    assert ok("affects", model_file("push-pull"), "X", "Y") == "X affects Y: [] X<--1 u=() : Y 0 -> 1\n"
    assert ok("affects", model_file("mod3"), "X1", "X0") == "X1 does not affect X0\n"
    assert run_command(["affects", model_file("mod3"), "X1", "Q"]).code == EXIT_INPUT


def test_sat_and_valid(tmp_path):
    contradiction = "[](X()=0) & [](X()=1)"
    assert ok("sat", contradiction, "--sig", TWO, "--class", "rec") == "UNSAT\n"
    assert ok("sat", contradiction, "--sig", TWO, "--class", "uniq") == "UNSAT\n"
    out = tmp_path / "witness.model"
    assert ok("sat", contradiction, "--sig", TWO, "--out", str(out)) == f"SAT\nwitness: {out}\n"
    assert read_model(out).signature.endo_names == ("X", "Y")

    c1 = "[](X()=0) -> ![](X()=1)"
    assert ok("valid", c1, "--sig", TWO, "--class", "UNIQ") == "VALID\n"
    shown = ok("valid", c1, "--sig", TWO, "--show")
    assert shown.startswith("INVALID\nendogenous X : 0 1\n")


def test_axioms_report(tmp_path):
    report = ok("axioms", "--sig", TWO, "--axiom", "C4", "--axiom", "C2", "--out-dir", str(tmp_path))
    lines = report.splitlines()
    assert lines[1].split()[:5] == ["C4", "ALL", "16", "12", "holds"]
    assert lines[2].split() == ["C2", "ALL", "16", "18", "FAILS", str(tmp_path / "C2_ALL.model")]
    system = ok("axioms", "--sig", TWO, "--class", "uniq", "--system", "AX_uniq")
    assert "FAILS" not in system
    assert run_command(["axioms", "--sig", TWO]).code == EXIT_INPUT


def test_reduce():
    text = ok("reduce", "[](X()=0)", "--sig", THREE, "--plus")
    assert text == "# formula: [](X()=0)\nendogenous X : 0 1\nendogenous X_star : 0 1\n"
    assert ok("reduce", "[](X()=0)", "--sig", THREE) == "# formula: [](X()=0)\nendogenous X : 0 1\n"


def test_cnf2gp(tmp_path):
    sig_out = tmp_path / "sample.sig"
    text = ok("cnf2gp", str(FIXTURES / "sample.cnf"), "--sig-out", str(sig_out))
    assert text.startswith("# formula (PLUS): [](Y1()=1 & Y2()=1 & Y3()=1) & ")
    assert sig_out.read_text(encoding="utf-8") == "\n".join(text.splitlines()[1:]) + "\n"


def test_cnf2gp_clause_width(tmp_path):
    path = tmp_path / "two.cnf"
    path.write_text("p cnf 2 1\n1 -2 0\n", encoding="utf-8")
    result = run_command(["cnf2gp", str(path)])
    assert result.code == EXIT_INPUT
    assert result.stderr.startswith("error: clause 1 has 2 literal(s), expected 3")
    first = ok("cnf2gp", str(path), "--any-width").splitlines()[0]
    assert first.endswith("): [](Y1()=1) & [X1<-0;X2<-1](Y1()=0)")


def test_project(tmp_path):
    out = tmp_path / "projected.model"
    text = ok("project", model_file("push-pull"), "[](X()=0)", "--mode", "uniq", "--out", str(out))
    assert text == "endogenous X : -1 0 1\neq X() = 0\n"
    assert out.read_text(encoding="utf-8") == text
    assert run_command(["project", model_file("push-pull"), "[](X()=0)", "--mode", "rec"]).code == EXIT_INPUT
    assert run_command(["project", model_file("copycat"), "[](X()=0)", "--mode", "from-reduced"]).code == EXIT_INPUT


@pytest.mark.parametrize(
    "argv, code, message",
    [
        (["parse", TWO, "[](X()=0) &"], EXIT_INPUT, "error: column 12: unexpected end of input"),
        (["parse", TWO, "[](Q()=0)"], EXIT_INPUT, "error: "),
        (["check", "missing.model", "[](X()=0)"], EXIT_INPUT, "error: "),
        (["solve", model_file("copycat"), "--do", "X=1"], EXIT_INPUT, "error: bad setting 'X=1'"),
        (["--budget", "10", "sat", "[](X()=0)", "--sig", TWO], EXIT_BUDGET, "error: "),
    ],
)
def test_error_exit_codes(argv, code, message):
    result = run_command(argv)
    assert result.code == code
    assert result.stdout == ""
    assert result.stderr.startswith(message)


def test_usage_errors_and_help(capsys):
    assert run_command(["frobnicate"]).code == EXIT_INPUT
    assert run_command(["--help"]).code == EXIT_OK
    assert "usage: causal" in capsys.readouterr().out


def test_main_writes_streams(capsys):
    assert main(["classify", model_file("copycat")]) == EXIT_OK
    assert capsys.readouterr().out == "ALL (not UNIQ)\n"
