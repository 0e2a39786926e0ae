import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from twistcalc.cli import main

GOLDEN = Path(__file__).parent / "golden"
QQ = "field = Q(q); generators = x; twist x = q*x"
QL = "field = Q(q); generators = x; mode = laurent; twist x = q*x"
F3 = "field = GF(3); generators = x; twist x = x + 1"
F5 = "field = GF(5); generators = x; twist x = 2*x"
Q2 = "field = Q; generators = x; twist x = 2*x"


def run(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue().strip(), err.getvalue().strip()


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["normalize", "--ring-text", QQ, "d * x"], "1 + q*x*d"),
        (["normalize", "--ring-text", QQ, "T * x"], "q*x*T"),
        (["normalize", "--ring-text", QQ, "x * d - x * d"], "0"),
        (["normalize", "--ring-text", QQ, "d d x"], "(q + 1)*d + q^2*x*d^2"),
        (["convert", "--ring-text", QL, "T"], "1 + (q - 1)*x*d"),
        (["convert", "--ring-text", QL, "d"], "-(1/(q - 1))*x^-1 + (1/(q - 1))*x^-1*T"),
        (["apply", "--ring-text", QQ, "d^2", "x^3"], "(q^3 + 2*q^2 + 2*q + 1)*x"),
        (["solve", "invariants", "--ring-text", F3, "--bound", "3"], "1, x^3 - x"),
        (["solve", "constants", "--ring-text", F5, "--bound", "4"], "1, x^4"),
        (["solve", "center", "--ring-text", F5, "--bound", "4", "--op-bound", "4"], "1, x^4, T^4, x^4*T^4"),
        (["solve", "h0h1", "--ring-text", Q2, "--bound", "6"], "H0: 1\nH1: 1"),
        (["solve", "horizontal", "--ring-text", F3, "--bound", "3"], "1, x^3 - x"),
        (["verify", "confluence"], "confluence: pass (21 checks)"),
        (["module", "translate", "--ring-text", "field = Q; generators = x; mode = laurent; twist x = 2*x",
          "--sigma", "[x]"], "N1 = [1 - x^-1]"),
        (["module", "translate", "--ring-text", QQ, "--diff", "[1]"], "S1 = [(q - 1)*x + 1]"),
    ],
)
def test_text_output(argv, expected):
    code, out, err = run(*argv)
    assert (code, out, err) == (0, expected, "")


def test_convert_round_trip():
    _, w, _ = run("convert", "--ring-text", QL, "x^2*T^2 + 3*T")
    _, back, _ = run("convert", "--ring-text", QL, w)
    assert back == "3*T + x^2*T^2"


def test_stdin_expression():
    assert run("normalize", "--ring-text", QQ, stdin="d*x\n")[1] == "1 + q*x*d"
    assert run("apply", "--ring-text", QQ, "d", stdin="x^2")[1] == "(q + 1)*x"


def test_exit_codes():
    code, out, _ = run("verify", "confluence", "--polynomial-base")
    assert code == 1 and "inexpressible" in out
    code, _, err = run("normalize", "--ring-text", QQ, "d +")
    assert code == 2 and err.startswith("syntax error: 1:4")
    code, _, err = run("convert", "--ring-text", QQ, "d")
    assert code == 2 and "NotStrong" in err
    code, _, err = run("normalize", "--ring-text", "field = Q; generators = x; mode = laurent; twist x = x + 1", "d")
    assert code == 2 and "InvalidTwist" in err
    code, _, err = run("normalize", "--ring", "/nonexistent/ring.cfg", "d")
    assert code == 2 and err
    code, out, _ = run("verify", "schwarz", "--ring-text", "field = Q(t); generators = x; twist x = t^2*x; twist x = t*x")
    assert code == 1 and out.startswith("schwarz: fail")
    code, _, _ = run("verify", "leibniz", "--ring-text", QQ, "--seed", "7")
    assert code == 0


def test_module_check():
    two = "field = Q(q); generators = x1, x2; twist x1 = q*x1; twist x2 = 2*x2"
    code, out, _ = run("module", "check", "--ring-text", two, "--sigma", "[x2]", "--sigma", "[x1]")
    assert code == 0 and out == "compatible: no (pair 1, 2)"
    code, out, _ = run("module", "check", "--ring-text", two, "--diff", "[0]", "--diff", "[0]")
    assert out == "integrable: yes"


def test_ring_file(tmp_path):
    f = tmp_path / "ring.cfg"
    f.write_text("# q-dilation\nfield = Q(q)\ngenerators = x\ntwist x = q*x\n")
    assert run("normalize", "--ring", str(f), "d*x")[1] == "1 + q*x*d"


# -- machine output -----------------------------------------------------------

GOLDEN_CASES = {
    "normalize": ["normalize", "--ring-text", QQ, "d*d*x", "--format", "json"],
    "convert": ["convert", "--ring-text", QL, "d", "--format", "json"],
    "center": ["solve", "center", "--ring-text", F5, "--bound", "4", "--op-bound", "4", "--format", "json"],
    "h0h1": ["solve", "h0h1", "--ring-text", "field = GF(5); generators = x; twist x = 2*x", "--bound", "8", "--format", "json"],
    "leibniz": ["verify", "leibniz", "--ring-text", F3, "--seed", "11", "--format", "json"],
    "confluence": ["verify", "confluence", "--format", "json"],
    "translate": ["module", "translate", "--ring-text", QL, "--sigma", "[x, 1] [0, q]", "--format", "json"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_json(name):
    code, out, _ = run(*GOLDEN_CASES[name])
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"command", "ring", "result", "bounds", "stability", "version"}
    assert set(data["result"]) == {"text", "data"}
    path = GOLDEN / f"{name}.json"
    if os.environ.get("UPDATE_GOLDEN"):
        path.write_text(out + "\n")
    assert out + "\n" == path.read_text()
    # byte-stable across runs
    assert run(*GOLDEN_CASES[name])[1] == out


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "twistcalc", "normalize", "--ring-text", QQ, "d*x"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "1 + q*x*d"


def test_quotient_form_of_d():
    _, converted, _ = run("convert", "--ring-text", QL, "d")
    _, written, _ = run("normalize", "--ring-text", QL, "(1 - T)/((1 - q)*x)")
    assert converted == written
    _, t_form, _ = run("convert", "--ring-text", QL, "1 - (1 - q)*x*d")
    assert t_form == "T"
