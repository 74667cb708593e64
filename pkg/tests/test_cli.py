import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from uqwhittaker.cli import main

GOLDEN = Path(__file__).parent / "golden"
CASES = json.loads((GOLDEN / "cases.json").read_text())


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_nf_e3():
    code, out, _ = run("nf", "E1*E2 - q^-1*E2*E1")
    assert code == 0 and out == "E3\n"


def test_nf_specialized():
    code, out, _ = run("nf", "E1*F1 - F1*E1", "--q", "2")
    assert code == 0
    assert out == "(2/3)*K1 + (-2/3)*K1^-1\n"


def test_vectors_noncritical_json():
    code, out, _ = run("vectors", "--kappa", "1", "--c", "0", "--l", "0", "--degree", "3", "--json")
    data = json.loads(out)
    assert code == 0 and data["dimension"] == 1 and data["certified"]


def test_vectors_text_and_exact():
    code, out, _ = run("vectors", "--kappa", "1", "--c", "(q+q^-1)/(q-q^-1)^2", "--degree", "3", "--exact")
    assert code == 0
    assert out.startswith("dimension 3 (window j+k <= 3, l = 0)")
    assert "closed forms: v, u(1), u(2)" in out


def test_vectors_numeric_field():
    code, out, _ = run("vectors", "--kappa", "1", "--c", "0", "--degree", "2", "--q", "3", "--json")
    data = json.loads(out)
    assert code == 0 and data["dimension"] == 1 and data["eval_point"] == {"q": "3", "alpha": "1"}


def test_criticality_text():
    code, out, _ = run("criticality", "--kappa", "1", "--c", "0")
    assert code == 0 and out.splitlines() == ["non-critical", "scan bound 50: complete"]
    code, out, _ = run("criticality", "--kappa", "q", "--c", "(q^2+q^-2)/(q-q^-1)^2", "--nmax", "2")
    assert "incomplete" in out and "roots [1]" in out


def test_structure_text():
    code, out, _ = run("structure", "--kappa", "1", "--c", "(q+q^-1)/(q-q^-1)^2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "two_step: 0 < W+ < W- < V"
    assert all(line.endswith("ok") for line in lines if "central character" in line)


def test_act_plain_and_reduced():
    code, out, _ = run("act", "E1", "on", "F3*v")
    assert code == 0 and out == "F3 (alpha) v + F2 K2^2 (K^-1) v\n"
    code, out, _ = run("act", "K - 1", "on", "v", "--kappa", "1", "--c", "0")
    assert code == 0 and out == "0\n"


def test_verify_suite_pbw():
    code, out, _ = run("verify", "--suite", "pbw")
    assert code == 0 and out.startswith("PASS pbw")


def test_verify_output_file(tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run("verify", "--suite", "g-power", "--nmax", "2", "--output", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert data["passed"] and data["suites"][0]["suite"] == "g-power"


@pytest.mark.parametrize("argv", [
    ["nf", "E1 +"],
    ["nf", "v"],
    ["nf", "1/(q-q)"],
    ["act", "E1", "at", "v"],
    ["act", "v", "on", "v"],
    ["act", "E1", "on", "E2"],
    ["act", "E1", "on", "v", "--kappa", "1"],
    ["vectors", "--kappa", "0", "--c", "1", "--degree", "2"],
    ["vectors", "--kappa", "1", "--c", "E1", "--degree", "2"],
    ["vectors", "--kappa", "1", "--c", "0", "--degree", "0"],
    ["criticality", "--kappa", "1", "--c", "0", "--q", "1"],
    ["criticality", "--kappa", "1", "--c", "0", "--alpha", "x"],
    ["verify", "--suite", "nonsense"],
    ["verify", "--nmax", "-1"],
])
def test_usage_errors_exit_2(argv):
    code, out, err = run(*argv)
    assert code == 2
    assert err.startswith("uqw: error:") and out == ""


def test_argparse_errors_exit_2():
    assert run()[0] == 2
    assert run("vectors", "--kappa", "1")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "uqwhittaker", "nf", "K1*K1^-1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "1\n"


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    code, first, _ = run(*CASES[name])
    assert code == 0
    code, second, _ = run(*CASES[name])
    assert first == second
    assert first == (GOLDEN / name).read_text()
