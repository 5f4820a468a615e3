import csv
import io
import json
import subprocess
import sys

import pytest

from overres import cli

EXPECTED_COMMANDS = ["table1", "table2", "centre", "height", "over-restricted", "group", "phi", "verify",
                 "overenv-dim", "alcove", "thresholds"]


def run(argv, capsys):
    status = cli.main(argv)
    out = capsys.readouterr()
    return status, out.out, out.err


def test_every_operation_has_a_subcommand():
    assert sorted(cli.COMMANDS) == sorted(EXPECTED_COMMANDS)
    assert set(cli.VERIFY_CHECKS) == {"abs-chev", "abs-n-chev", "hopf", "jacobi"}
    parser = cli.build_parser()
    sub = next(a for a in parser._actions if a.dest == "command")
    assert sorted(sub.choices) == sorted(EXPECTED_COMMANDS)


def test_centre(capsys):
    assert run(["centre", "A", "4", "5"], capsys)[:2] == (0, "dim Z = 1 (dagger)\n")
    assert run(["centre", "G", "2", "7"], capsys)[:2] == (0, "dim Z = 0\n")


def test_verify_abs_chev(capsys):
    status, out, _ = run(["verify", "abs-chev", "--type", "A1", "--p", "5", "--m", "2"], capsys)
    assert status == 0 and out == "PASS (all cone points x basis)\n"


def test_verify_failure_exit_code(capsys):
    status, out, _ = run(["verify", "abs-n-chev", "--p", "2", "--n", "3", "--m", "6"], capsys)
    assert status == 1 and out.startswith("FAIL")


@pytest.mark.parametrize("argv", [
    ["verify", "hopf", "--p", "3"],
    ["verify", "jacobi", "--type", "G2", "--p", "3"],
    ["verify", "abs-n-chev", "--p", "3", "--n", "2", "--m", "4"],
])
def test_verify_passes(argv, capsys):
    status, out, _ = run(argv, capsys)
    assert status == 0 and out.startswith("PASS")


@pytest.mark.parametrize("argv", [
    ["centre", "A", "4", "6"],
    ["centre", "Q", "4", "5"],
    ["height", "--p", "5"],
    ["height", "--type", "A2", "--p", "5", "--m", "1"],
    ["alcove", "--type", "A2", "--p", "5", "--weight", "1"],
    ["thresholds", "--type", "E8", "--n", "1"],
    ["verify", "abs-n-chev", "--p", "3"],
    ["group", "--p", "9", "--module", "natural"],
])
def test_invalid_input_exit_two(argv, capsys):
    status, out, err = run(argv, capsys)
    assert status == 2 and out == "" and "error:" in err


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as exc:
        cli.main(["centre", "A"])
    assert exc.value.code == 2


def test_table2_csv(capsys):
    status, out, _ = run(["table2", "--format", "csv"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert status == 0 and len(out.strip().splitlines()) == len(rows) + 1 == 32


def test_json_round_trip(capsys):
    status, out, _ = run(["phi", "--p", "5", "--module", "natural", "--format", "json"], capsys)
    doc = json.loads(out)
    assert doc["command"] == "phi" and doc["seed"] == cli.DEFAULT_SEED
    assert doc["report"]["kernel_order"] == 2 and doc["report"]["function"]
    assert json.dumps(doc, sort_keys=True, indent=2) + "\n" == out


def test_determinism(capsys):
    argv = ["over-restricted", "--type", "A3", "--p", "3", "--module", "adjoint", "--format", "json", "--seed", "5"]
    first = run(argv, capsys)[1]
    second = run(argv, capsys)[1]
    assert first == second and json.loads(first)["seed"] == 5


def test_group_and_height(capsys):
    assert run(["group", "--p", "3", "--module", "natural"], capsys)[1] == "order = 24\ndiameter = 4\n"
    assert run(["height", "--p", "3", "--module", "u0"], capsys)[1] == "xi = 5\nintegrable over G_(2)\n"
    out = run(["height", "--p", "3", "--module", "trivial"], capsys)[1]
    assert "already integrable at n=0" in out


def test_overenv(capsys):
    status, out, _ = run(["overenv-dim", "--p", "3", "--format", "json"], capsys)
    rep = json.loads(out)["report"]
    assert status == 0 and rep["dimension"] == 5 and rep["agree"]


def test_alcove(capsys):
    out = run(["alcove", "--type", "G2", "--p", "7", "--weight", "3,3"], capsys)[1]
    assert "4 < 9 < 11" in out and "10 < 12 < 17" in out and "highest_coroot_band: 8" in out


def test_thresholds_csv(capsys):
    status, out, _ = run(["thresholds", "--type", "E7", "--format", "csv"], capsys)
    rows = dict(r for r in csv.reader(io.StringIO(out)))
    assert status == 0 and json.loads(rows["p0"])["2"] == 383


def test_out_file(tmp_path, capsys):
    target = tmp_path / "t1.txt"
    status, out, _ = run(["table1", "--out", str(target)], capsys)
    assert status == 0 and out == "" and "mismatches: none" in target.read_text()


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "overres", "centre", "E", "6", "3"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout == "dim Z = 1 (dagger)\n"
