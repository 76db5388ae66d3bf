import csv
import io
import json
import subprocess
import sys

import pytest

from xppt.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_ratio_text(capsys):
    assert run(capsys, "ratio", "2", "2")[:2] == (0, "2/5 = 0.40000000000000000\n")
    assert run(capsys, "ratio", "4", "4")[:2] == (0, "16/625 = 0.02560000000000000\n")


def test_ratio_rejects_degenerate(capsys):
    code, _, err = run(capsys, "ratio", "1", "5")
    assert code == 2
    assert "m must be >= 2" in err


def test_ratio_json(capsys):
    code, out, _ = run(capsys, "ratio", "6", "7", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"m": 6, "n": 7, "ratio": "512/1953125", "decimal": "0.00026214400000000"}


def test_volume(capsys):
    code, out, _ = run(capsys, "volume", "2", "2", "--format", "json")
    data = json.loads(out)
    assert data["volume_x"]["coeff"] == "1/5040" and data["volume_x"]["pi_power"] == 2
    assert data["volume_ppt"]["coeff"] == "1/12600"


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "2", "3", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert (data["A"], data["B"], data["C"]) == (1, 1, 0)
    assert data["quadruples"] == [[1, 6, 3, 4]]
    assert data["fixed_pairs"] == [[2, 5]]
    assert data["center"] is None


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--max-m", "4", "--max-n", "5")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 3 * 4
    assert list(rows[0]) == ["m", "n", "A", "B", "C", "ratio_exact", "ratio_decimal", "Vx_coeff", "Vx_pi_power"]
    assert [(r["m"], r["n"]) for r in rows[:2]] == [("2", "2"), ("2", "3")]
    by_dims = {(r["m"], r["n"]): r for r in rows}
    assert (by_dims["2", "2"]["A"], by_dims["2", "2"]["B"], by_dims["2", "2"]["C"]) == ("1", "0", "0")
    assert by_dims["2", "2"]["ratio_exact"] == "2/5"
    assert (by_dims["3", "3"]["A"], by_dims["3", "3"]["B"], by_dims["3", "3"]["C"]) == ("1", "2", "1")
    assert by_dims["3", "3"]["ratio_exact"] == "2/5"
    assert by_dims["4", "4"]["ratio_decimal"] == "0.0256"


def test_table_io_error(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code, _, _ = run(capsys, "table", "--output", str(blocker / "sub" / "t.csv"))
    assert code == 3


def test_estimate_rb_2x3(capsys):
    code, out, _ = run(capsys, "estimate", "2", "3", "--samples", "1000000", "--seed", "42",
                       "--method", "rb", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert abs(data["mean"] - 0.4) < 3 * data["std_error"]
    assert data["method"] == "rao_blackwell"


def test_estimate_too_few_samples(capsys):
    assert run(capsys, "estimate", "2", "2", "--samples", "1")[0] == 2


def test_estimate_deterministic_and_worker_independent(capsys):
    args = ["estimate", "3", "3", "--samples", "200000", "--seed", "7", "--format", "csv"]
    first = run(capsys, *args)[1]
    second = run(capsys, *args)[1]
    parallel = run(capsys, *args, "--workers", "3")[1]
    assert first == second == parallel
    assert first.splitlines()[0] == "m,n,method,count,seed,mean,std_error,analytic,z_score"


def test_estimate_verification_failure_exit(capsys, monkeypatch):
    import xppt.cli as cli
    monkeypatch.setattr(cli, "Z_FAIL", 0.0)
    assert run(capsys, "estimate", "2", "2", "--samples", "1000", "--seed", "1")[0] == 1


def test_verify_pass_and_fault(capsys):
    code, out, _ = run(capsys, "verify", "--states", "200")
    assert code == 0
    assert "quad_i_zero vs i_zero" in out and "tol=1e-06" in out
    assert out.strip().endswith("checks passed")
    code, out, _ = run(capsys, "verify", "--states", "50", "--inject-fault")
    assert code == 1
    assert "FAIL  quad_ratio_2x2" in out


def test_dump_samples(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("XPPT_OUTPUT_DIR", str(tmp_path))
    assert run(capsys, "dump-samples", "2", "2", "--samples", "5", "--seed", "3", "-o", "s.jsonl")[0] == 0
    lines = (tmp_path / "s.jsonl").read_text().splitlines()
    assert len(lines) == 5
    rec = json.loads(lines[0])
    assert len(rec["diag"]) == 4 and len(rec["offdiag"]) == 2 and len(rec["offdiag"][0]) == 2


def test_config_file_defaults_and_override(capsys, tmp_path):
    conf = tmp_path / "run.conf"
    conf.write_text("# experiment manifest\nsamples = 5000\nseed = 11\nformat = json\n")
    code, out, _ = run(capsys, "--config", str(conf), "estimate", "2", "2")
    assert code == 0
    data = json.loads(out)
    assert (data["count"], data["seed"]) == (5000, 11)
    code, out, _ = run(capsys, "--config", str(conf), "estimate", "2", "2", "--seed", "12")
    assert json.loads(out)["seed"] == 12


def test_missing_config_is_io_error(capsys, tmp_path):
    assert run(capsys, "--config", str(tmp_path / "nope"), "ratio", "2", "2")[0] == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "xppt", "ratio", "2", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "2/5 = 0.40000000000000000\n"
