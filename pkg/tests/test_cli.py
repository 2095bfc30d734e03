import json
import subprocess
import sys
from fractions import Fraction

import pytest

from cdkernel import cli
from cdkernel.suites import SUITES


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_ortho(capsys, m3_file):
    code, out, _ = run(capsys, "ortho", "--measure", m3_file, "--n", 2)
    assert code == 0
    assert out == "k=0 norm=3 coeffs=1\nk=1 norm=2 coeffs=0,1\nk=2 coeffs=-2/3,0,1\n"


def test_kernel_all_routes(capsys, m3_file):
    code, out, _ = run(capsys, "kernel", "--measure", m3_file, "--n", 2, "--m", 1, "--x", "0", "--y", "1")
    assert code == 0
    lines = out.splitlines()
    for route in cli.ROUTES + ("pfaffian_sqrt",):
        assert f"route={route} value=1/3" in lines
    assert "route=pfaffian_zeta skipped=irrational" in lines
    assert lines[-1] == "agreement=true"


def test_kernel_coincident_points(capsys, m3_file):
    code, out, _ = run(capsys, "kernel", "--measure", m3_file, "--n", 2, "--m", 2, "--x", "0,0", "--y", "1,2")
    assert code == 0
    lines = out.splitlines()
    assert "route=integral value=1/6" in lines
    for route in ("sum", "two_point_det", "one_point_det"):
        assert f"route={route} skipped=coincident" in lines
    assert lines[-1] == "agreement=true"


def test_kernel_pfaffian_routes_on_square_coordinates(capsys, m3_file):
    # z = (1, 4, 9, 16) has rational square roots
    code, out, _ = run(capsys, "kernel", "--measure", m3_file, "--n", 2, "--m", 2, "--x", "1,4", "--y", "9,16",
                       "--routes", "integral,pfaffian_sqrt")
    assert code == 0
    assert out == "route=integral value=1/6\nroute=pfaffian_sqrt value=1/6\nagreement=true\n"


def test_kernel_zeta_route(capsys, m3_file):
    # z = 1/2 + 2 - 2 and 1/3 + 3 - 2 come from zeta = 2 and 3
    code, out, _ = run(capsys, "kernel", "--measure", m3_file, "--n", 2, "--m", 1, "--x", "1/2", "--y", "4/3",
                       "--routes", "sum,pfaffian_zeta")
    assert code == 0
    assert out.splitlines()[1].startswith("route=pfaffian_zeta value=")
    assert out.endswith("agreement=true\n")


def test_schur(capsys, m3_file):
    code, out, _ = run(capsys, "schur", "--measure", m3_file, "--n", 2, "--m", 1)
    assert code == 0
    assert out.splitlines() == [
        "lambda=() mu=() coeff=1/3",
        "lambda=() mu=(1) coeff=0",
        "lambda=(1) mu=() coeff=0",
        "lambda=(1) mu=(1) coeff=1/2",
    ]


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "rains", "--trials", 50, "--seed", 42, "--max-n", 0)
    assert code == 0
    assert out == "suite=rains trials=50 status=PASS\n"


@pytest.mark.parametrize(
    "argv",
    [
        ["kernel", "--n", 2, "--m", 3, "--x", "0,1,2", "--y", "3,4,5"],
        ["kernel", "--n", 2, "--m", 1, "--x", "0", "--y", "1", "--routes", "bogus"],
        ["kernel", "--n", 2, "--m", 1, "--x", "0.5", "--y", "1"],
        ["kernel", "--n", 2, "--m", 2, "--x", "0", "--y", "1"],
        ["ortho", "--n", 4],
        ["schur", "--n", 1, "--m", 2],
        ["verify", "--suite", "nonsense", "--trials", 1],
        ["verify", "--suite", "rains", "--trials", 0],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors_exit_two(capsys, m3_file, argv):
    if argv and argv[0] in ("kernel", "ortho", "schur"):
        argv = argv[:1] + ["--measure", m3_file] + argv[1:]
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err


@pytest.mark.parametrize(
    "payload",
    [
        {"points": ["1", "1"], "weights": ["1", "1"]},
        {"points": ["0.5"], "weights": ["1"]},
        {"points": ["1"], "weights": ["0"]},
        {"points": ["1"]},
    ],
)
def test_rejected_measure_files(capsys, tmp_path, payload):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(payload))
    code, out, err = run(capsys, "ortho", "--measure", path, "--n", 1)
    assert code == 2 and out == "" and "error" in err


def test_missing_measure_file(capsys, tmp_path):
    code, _, err = run(capsys, "ortho", "--measure", tmp_path / "absent.json", "--n", 1)
    assert code == 2 and err


def test_negative_weight_accepted(capsys, tmp_path):
    path = tmp_path / "signed.json"
    path.write_text(json.dumps({"points": ["1/2"], "weights": ["-2/3"]}))
    code, out, _ = run(capsys, "ortho", "--measure", path, "--n", 1)
    assert code == 0
    assert out == "k=0 norm=-2/3 coeffs=1\nk=1 coeffs=-1/2,1\n"


def test_disagreement_exits_one(capsys, monkeypatch, m3_file):
    real = cli.km_eval

    def skewed(system, x, y, route="integral"):
        value = real(system, x, y, route)
        return value + 1 if route == "sum" else value

    monkeypatch.setattr(cli, "km_eval", skewed)
    code, out, _ = run(capsys, "kernel", "--measure", m3_file, "--n", 2, "--m", 1, "--x", "0", "--y", "1")
    assert code == 1
    assert "route=sum value=4/3" in out
    assert out.endswith("agreement=false\n")


def test_failing_suite_exits_one(capsys, monkeypatch):
    monkeypatch.setitem(SUITES, "always-fails", lambda gen, n, m: (False, {"value": Fraction(1, 2)}))
    code, out, _ = run(capsys, "verify", "--suite", "always-fails", "--trials", 2)
    assert code == 1
    assert out.splitlines() == [
        "suite=always-fails trials=2 status=FAIL",
        'suite=always-fails counterexample={"trial":0,"value":"1/2"}',
    ]


def test_rational_sqrt():
    assert cli.rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert cli.rational_sqrt(Fraction(2)) is None
    assert cli.rational_sqrt(Fraction(-1)) is None


def _subprocess(*argv):
    return subprocess.run([sys.executable, "-m", "cdkernel", *map(str, argv)], capture_output=True)


def test_repeated_runs_are_byte_identical():
    argv = ("verify", "--suite", "all", "--trials", 2, "--seed", 11, "--max-n", 3)
    first, second = _subprocess(*argv), _subprocess(*argv)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout
    assert first.stdout.count(b"status=PASS") == len(SUITES)
