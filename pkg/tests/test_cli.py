import json
import subprocess
import sys

import numpy as np
import pytest

from kmixture.cli import main
from kmixture.designs import Design


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def kopt(tmp_path, capsys):
    code, out, _ = run(capsys, "koptimal", "--order", "2", "--q", "3")
    assert code == 0
    path = tmp_path / "k.json"
    path.write_text(out)
    return path


def test_koptimal_example(capsys):
    code, out, _ = run(capsys, "koptimal", "--order", "2", "--q", "3")
    data = json.loads(out)
    assert code == 0
    assert data["weights_exact"] == ["17/99"] * 3 + ["16/99"] * 3
    assert data["points"][3] == [0.5, 0.5, 0.0]


def test_koptimal_first_order_csv(capsys):
    code, out, _ = run(capsys, "koptimal", "--order", "1", "--q", "2", "--format", "csv")
    assert out == "x1,x2,weight\n1,0,0.5\n0,1,0.5\n"


def test_lattice_and_centroid(capsys):
    _, out, _ = run(capsys, "lattice", "--q", "3", "--m", "3")
    assert len(json.loads(out)["points"]) == 10
    _, out, _ = run(capsys, "centroid", "--q", "4", "--format", "csv")
    assert len(out.splitlines()) == 16


def test_lattice_domain_error(capsys):
    code, _, err = run(capsys, "lattice", "--q", "0", "--m", "2")
    assert code == 1 and err.startswith("kmixture: domain:")


def test_evaluate_small_support_infinite(tmp_path, capsys):
    path = tmp_path / "five.json"
    path.write_text(json.dumps({"q": 3, "points": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0.5, 0.5, 0], [0.5, 0, 0.5]]}))
    code, out, _ = run(capsys, "evaluate", "--design", str(path), "--order", "2")
    rep = json.loads(out)
    assert code == 0 and rep["kappa"] == "inf" and rep["p"] == 6


def test_evaluate_koptimal(kopt, capsys):
    _, out, _ = run(capsys, "evaluate", "--design", str(kopt), "--order", "2")
    rep = json.loads(out)
    assert rep["kappa"] == pytest.approx(65.984845, abs=1e-5)
    assert set(rep) == {"p", "lambda_max", "lambda_min", "kappa", "log_det"}


def test_optimize_round_trips_into_evaluate(kopt, tmp_path, capsys):
    code, out, _ = run(capsys, "optimize", "--support", str(kopt), "--order", "2", "--criterion", "k")
    assert code == 0
    res = json.loads(out)
    np.testing.assert_allclose(res["weights"], [17 / 99] * 3 + [16 / 99] * 3, atol=1e-6)
    assert res["converged"] is True
    path = tmp_path / "opt.json"
    path.write_text(out)
    code, out, _ = run(capsys, "evaluate", "--design", str(path), "--order", "2")
    assert code == 0


def test_optimize_d(kopt, capsys):
    _, out, _ = run(capsys, "optimize", "--support", str(kopt), "--order", "2", "--criterion", "d")
    np.testing.assert_allclose(json.loads(out)["weights"], 1 / 6, atol=1e-6)


def test_optimize_deterministic(kopt, capsys):
    argv = ["--threads", "2", "optimize", "--support", str(kopt), "--order", "2", "--criterion", "k",
            "--no-symmetry", "--multistarts", "2", "--seed", "3", "--tol", "1e-5"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_efficiency(capsys):
    _, out, _ = run(capsys, "efficiency", "--q", "3")
    data = json.loads(out)
    assert data["eff_d_of_k"] == pytest.approx(0.9995, abs=5e-4)
    assert data["eff_k_of_d"] == pytest.approx(0.9998, abs=5e-4)


def test_transform_example3(kopt, tmp_path, capsys):
    bounds = tmp_path / "bounds.json"
    bounds.write_text(json.dumps({"lower": [0.08, 0.0, 0.15], "upper": [0.43, 0.35, 0.50]}))
    code, out, _ = run(capsys, "transform", "--design", str(kopt), "--bounds", str(bounds),
                       "--direction", "from-pseudo-upper")
    assert code == 0
    d = Design.from_json(out)
    assert {tuple(np.round(p, 6)) for p in d.points} == {
        (0.43, 0.35, 0.22), (0.43, 0.07, 0.50), (0.15, 0.35, 0.50),
        (0.43, 0.21, 0.36), (0.29, 0.35, 0.36), (0.29, 0.21, 0.50),
    }
    back_path = tmp_path / "orig.json"
    back_path.write_text(out)
    _, out, _ = run(capsys, "transform", "--design", str(back_path), "--bounds", str(bounds),
                    "--direction", "to-pseudo-upper")
    np.testing.assert_allclose(Design.from_json(out).points, Design.from_json(kopt.read_text()).points, atol=1e-12)


def test_error_prefixes(kopt, tmp_path, capsys):
    bad_json = tmp_path / "bad.json"
    bad_json.write_text("{oops")
    code, _, err = run(capsys, "evaluate", "--design", str(bad_json), "--order", "2")
    assert code == 1 and err.startswith("kmixture: malformed-json:")

    infeasible = tmp_path / "inf.json"
    infeasible.write_text(json.dumps({"lower": [0.5, 0.6, 0.0]}))
    code, _, err = run(capsys, "transform", "--design", str(kopt), "--bounds", str(infeasible),
                       "--direction", "to-pseudo-lower")
    assert code == 1 and err.startswith("kmixture: infeasible-bounds:")

    wrong_q = tmp_path / "q4.json"
    wrong_q.write_text(json.dumps({"upper": [0.4, 0.4, 0.4, 0.4]}))
    code, _, err = run(capsys, "transform", "--design", str(kopt), "--bounds", str(wrong_q),
                       "--direction", "to-pseudo-upper")
    assert code == 1 and err.startswith("kmixture: dimension-mismatch:")

    code, _, err = run(capsys, "evaluate", "--design", str(tmp_path / "missing.json"), "--order", "2")
    assert code == 1 and "malformed-json" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["koptimal", "--order", "3", "--q", "3"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["table", "--qmax", "5", "--bogus"])
    assert exc.value.code == 2


def test_table_csv(capsys):
    _, out, _ = run(capsys, "table", "--qmax", "10", "--format", "csv")
    lines = out.splitlines()
    assert len(lines) == 9 and "\r" not in out
    row = lines[-1].split(",")
    assert row[0] == "10" and float(row[1]) == pytest.approx(0.05034, abs=1e-5) and row[-1] == "55"


def test_output_flag(tmp_path, capsys):
    target = tmp_path / "t.txt"
    assert main(["-o", str(target), "table", "--qmax", "4"]) == 0
    assert "25/196" in target.read_text()


def test_help_lists_everything():
    proc = subprocess.run([sys.executable, "-m", "kmixture.cli", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    for name in ["lattice", "centroid", "koptimal", "evaluate", "optimize", "efficiency", "transform", "table",
                 "--threads", "--version"]:
        assert name in proc.stdout
    sub = subprocess.run([sys.executable, "-m", "kmixture.cli", "optimize", "--help"], capture_output=True, text=True)
    for flag in ["--support", "--order", "--criterion", "--multistarts", "--seed", "--no-symmetry", "--tol"]:
        assert flag in sub.stdout


def test_version():
    proc = subprocess.run([sys.executable, "-m", "kmixture.cli", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "0.1.0" in proc.stdout
