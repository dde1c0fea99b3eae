import json
import subprocess
import sys

import pytest

from charsumlab import harness
from charsumlab.cli import dispatch


def run(capsys, *argv):
    code = dispatch(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_n_example(capsys):
    assert run(capsys, "count-n", "--l", "7", "--set", "1,2", "--n", "1") == (0, "4\n", "")
    assert run(capsys, "count-n", "--l", "7", "--set", "1,2", "--n", "1", "--oracle")[:2] == (0, "4\n")


def test_sum_example(capsys):
    assert run(capsys, "sum", "--q", "5", "--quadratic", "--from", "0", "--len", "4")[:2] == (0, "0\n")
    assert run(capsys, "sum", "--q", "5", "--quadratic", "--union", "0:2,2:2")[:2] == (0, "0\n")
    code, out, _ = run(capsys, "sum", "--q", "7", "--exponents", "1", "--from", "0", "--len", "6")
    assert code == 0 and complex(out.strip()) == pytest.approx(0, abs=1e-9)


def test_char(capsys):
    code, out, _ = run(capsys, "char", "--q", "9", "--exponents", "3", "--n", "2,3")
    assert code == 0
    assert "conductor=3" in out and "primitive=False" in out
    assert "chi(2) = -1" in out and "chi(3) = 0" in out


def test_missing_config(capsys, tmp_path):
    code, _, err = run(capsys, "verify-theorem", "--config", str(tmp_path / "missing.json"))
    assert code == 64 and "missing.json" in err


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "count-n", "--l", "7", "--set", "1,2", "--n", "1", "--bogus")[0] == 64
    assert run(capsys)[0] == 64
    assert run(capsys, "count-n", "--l", "7", "--set", "1,1", "--n", "1")[0] == 64
    bad = tmp_path / "c.json"
    bad.write_text("[1]")
    assert run(capsys, "verify-theorem", "--config", str(bad))[0] == 64
    bad.write_text(json.dumps({"campaign": "proposition"}))
    assert run(capsys, "verify-theorem", "--config", str(bad))[0] == 64


def test_set_file(capsys, tmp_path):
    f = tmp_path / "s.txt"
    f.write_text("1\n2\n")
    assert run(capsys, "count-n", "--l", "7", "--set-file", str(f), "--n", "1")[:2] == (0, "4\n")


def test_validation_and_scale_exit_codes(capsys):
    assert run(capsys, "count-n", "--l", "8", "--set", "1", "--n", "1")[0] == 2
    assert run(capsys, "verify-corollary", "--length-pow", "0.05")[0] == 2
    big = ",".join(str(i) for i in range(2000))
    assert run(capsys, "count-n", "--l", "10007", "--set", big, "--n", "100", "--oracle")[0] == 3


def test_cli_matches_library(capsys):
    argv = ["verify-prop", "--l", "101,1009", "--n", "2,8", "--sizes", "1,10", "--seed", "3"]
    code, out, _ = run(capsys, *argv)
    cfg = harness.ExperimentConfig.default("proposition", l_list=[101, 1009], n_list=[2, 8],
                                           set_sizes=[1, 10], seed=3)
    assert code == 0 and out == harness.render_report(harness.run_campaign(cfg), "csv")


def test_config_file_and_outputs(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"campaign": "reduction", "q_list": [100], "H": 10, "J": 1, "P": 1}))
    out = tmp_path / "r.json"
    code, stdout, _ = run(capsys, "verify-reduction", "--config", str(cfg), "--out", str(out), "--format", "json")
    assert code == 0 and stdout == ""
    (row,) = json.loads(out.read_text())
    assert row["pass"] is True and row["extra"]["M"] == 2


def test_corollary_certificates(capsys, tmp_path):
    out, certs = tmp_path / "c.csv", tmp_path / "certs.json"
    code, _, _ = run(capsys, "verify-corollary", "--trials", "2", "--out", str(out), "--certificates", str(certs))
    assert code == 0
    data = json.loads(certs.read_text())
    assert len(data) == 2 and all(c["reconciled"] for c in data)
    assert len(out.read_text().splitlines()) == 3


def test_seed_determines_output(capsys):
    argv = ["verify-theorem", "--q", "10007", "--scheme", "random"]
    a = run(capsys, *argv, "--seed", "5")[1]
    b = run(capsys, *argv, "--seed", "5")[1]
    c = run(capsys, *argv, "--seed", "6")[1]
    assert a == b and a != c


def test_extremal(capsys):
    code, out, _ = run(capsys, "extremal", "--l", "10007", "--pairs", "5:100,10:50", "--format", "json")
    assert code == 0 and len(json.loads(out)) == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "charsumlab", "count-n", "--l", "7", "--set", "1,2", "--n", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "4\n"
