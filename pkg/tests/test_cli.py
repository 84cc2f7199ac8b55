import csv
import json
import subprocess
import sys

import pytest

from cartaninv import cli
from cartaninv.report import FAIL, VerificationReport


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def table_rows(out):
    return list(csv.reader(out.splitlines()))


def usage_exit(capsys, *argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(list(argv))
    capsys.readouterr()
    return exc.value.code


def test_verify_x_passes(capsys):
    code, out, _ = run(capsys, "verify", "x", "--p", "2", "--r", "1", "--w-max", "4")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 5 and all(line.startswith("PASS") for line in lines)


def test_verify_writes_json(capsys, tmp_path):
    path = tmp_path / "out.json"
    code, _, _ = run(capsys, "verify", "reduction", "--p", "3", "--r", "1", "--w-max", "3",
                     "--json", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert len(data) == 4 * 6
    assert {"check", "params", "status", "expected", "actual", "millis"} <= set(data[0])
    assert all(item["status"] == "pass" for item in data)


def test_verify_cartan_blockwise(capsys):
    code, out, _ = run(capsys, "verify", "cartan", "--ell", "3", "--n-max", "4", "--blockwise")
    assert code == 0
    checks = {line.split()[1] for line in out.splitlines()}
    assert checks == {"global-cartan", "block-cartan", "wreath-shadow"}


def test_verify_wreath_ops(capsys):
    code, out, _ = run(capsys, "verify", "wreath-ops", "--trials", "5", "--seed", "3")
    assert code == 0
    assert len(out.splitlines()) == 5


def test_failure_exit_code(capsys, monkeypatch):
    def failing(p, r, w):
        return VerificationReport("prime-power-x", {"p": p, "r": r, "w": w}, FAIL, [1], [2], 0.0)

    monkeypatch.setattr(cli, "verify_prime_power_x", failing)
    code, out, _ = run(capsys, "verify", "x", "--p", "2", "--w-max", "1")
    assert code == 1
    assert out.startswith("FAIL")


def test_usage_errors(capsys):
    assert usage_exit(capsys, "verify", "x", "--p", "4") == 2
    assert usage_exit(capsys, "verify", "cartan", "--ell", "1") == 2
    assert usage_exit(capsys, "table", "bogus", "--ell", "2", "--w", "2") == 2
    assert usage_exit(capsys, "table", "theta", "--ell", "2") == 2
    assert usage_exit(capsys, "verify", "x", "--p", "2", "--w-max", "-1") == 2
    assert usage_exit(capsys) == 2


def test_theta_table(capsys):
    code, out, _ = run(capsys, "table", "theta", "--ell", "6", "--w", "3")
    assert code == 0
    rows = table_rows(out)
    assert rows == [["partition", "value"], ["[1,1,1]", "1296"], ["[2,1]", "18"], ["[3]", "2"]]


def test_cpr_table(capsys):
    code, out, _ = run(capsys, "table", "cpr", "--p", "2", "--r", "2", "--w", "2")
    assert code == 0
    assert ["[1,1]", "5"] in table_rows(out)


def test_rell_table_skips_divisible_parts(capsys):
    code, out, _ = run(capsys, "table", "rell", "--ell", "1", "--n", "3")
    assert code == 0
    assert out.splitlines() == ["partition,value"]
    _, out, _ = run(capsys, "table", "rell", "--ell", "2", "--n", "4")
    assert [row[0] for row in table_rows(out)[1:]] == ["[1,1,1,1]", "[3,1]"]


def test_snf_of_file(capsys, tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("2 1\n0 4\n")
    code, out, _ = run(capsys, "snf", str(path))
    assert code == 0
    assert out == "1\n8\n"


def test_snf_errors(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\n3 x\n")
    code, _, err = run(capsys, "snf", str(bad))
    assert code == 2 and "line 2" in err
    frac = tmp_path / "frac.txt"
    frac.write_text("1/2\n")
    assert run(capsys, "snf", str(frac))[0] == 2
    assert run(capsys, "snf", str(tmp_path / "missing.txt"))[0] == 2


def test_module_entry_point(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("2 0\n0 2\n")
    done = subprocess.run([sys.executable, "-m", "cartaninv", "snf", str(path)],
                          capture_output=True, text=True, check=False)
    assert done.returncode == 0
    assert done.stdout.split() == ["2", "2"]
