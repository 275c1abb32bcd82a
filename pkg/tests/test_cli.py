import json
import math
from fractions import Fraction as F

import pytest

from sobolev1d.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_constant_uniform(capsys):
    code, out, _ = run(capsys, "constant", "--k", "1", "--weight", "poly:1")
    assert code == 0
    doc = json.loads(out)
    assert doc["mu_exact"] == "12"
    assert doc["mu_float"] == 12.0
    assert doc["lambda"] == pytest.approx(1 / math.sqrt(12), abs=1e-12)
    assert doc["method"] == "pipeline"
    assert doc["outside_theorem_scope"] is False
    # reparsing the printed fraction is lossless
    assert F(doc["mu_exact"]) == 12


def test_constant_dirac_k2(capsys):
    code, out, _ = run(capsys, "constant", "--k", "2", "--weight", "dirac:1/2")
    assert code == 0
    doc = json.loads(out)
    assert doc["mu_exact"] == "192"
    assert doc["outside_theorem_scope"] is True


def test_constant_exact_fraction_round_trip(capsys):
    code, out, _ = run(capsys, "constant", "--k", "1", "--weight", "chi:0,1/2")
    doc = json.loads(out)
    assert F(doc["mu_exact"]) == F(48, 5)


def test_constant_hardy(capsys):
    code, out, _ = run(capsys, "constant", "--k", "1", "--weight", "hardy:1")
    assert code == 0
    doc = json.loads(out)
    assert doc["lambda"] == 1.0
    assert doc["outside_theorem_scope"] is True
    assert doc["method"] == "closed_form"


def test_minimizer_samples(capsys):
    code, out, _ = run(
        capsys, "minimizer", "--k", "1", "--weight", "poly:1", "--samples", "3"
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "x,u,u_k"
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == 3
    assert float(rows[0][1]) == 0.0  # u(0) = 0
    assert float(rows[1][1]) == pytest.approx(1.5)  # 6 * 1/2 * 1/2
    assert float(rows[2][1]) == 0.0  # u(1) = 0


def test_minimizer_hardy_origin_row(capsys):
    code, out, _ = run(
        capsys, "minimizer", "--k", "1", "--weight", "hardy:1", "--samples", "5"
    )
    assert code == 0
    rows = out.strip().split("\n")[1:]
    first = rows[0].split(",")
    assert float(first[0]) == 0.0
    assert float(first[1]) == 0.0  # limit value of -x ln x
    assert first[2] == "inf"  # the derivative -ln x - 1 diverges at 0
    mid = rows[2].split(",")  # x = 1/2: u' = -ln(1/2) - 1 = ln 2 - 1
    assert float(mid[2]) == pytest.approx(math.log(2.0) - 1.0, abs=1e-12)
    last = rows[-1].split(",")
    assert float(last[1]) == 0.0
    assert float(last[2]) == pytest.approx(-1.0, abs=1e-12)  # u'(1) = -1


def test_minimizer_boundary_rows_always_zero(capsys):
    for weight in ("poly:1 + x", "chi:1/4,3/4", "dirac:1/3"):
        _, out, _ = run(
            capsys, "minimizer", "--k", "2", "--weight", weight, "--samples", "9"
        )
        rows = out.strip().split("\n")[1:]
        assert float(rows[0].split(",")[1]) == 0.0
        assert float(rows[-1].split(",")[1]) == 0.0


def test_verify_uniform_k2(capsys):
    code, out, _ = run(capsys, "verify", "--k", "2", "--weight", "poly:1")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "agree"
    assert doc["galerkin"]["gap"] == 0.0
    assert doc["sign_iteration"]["sign_definite"] is True
    assert doc["max_principle"] == "pass"


def test_verify_half_indicator(capsys):
    code, out, _ = run(capsys, "verify", "--k", "1", "--weight", "chi:0,1/2")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "agree"
    assert doc["pipeline_mu"] == pytest.approx(9.6)
    # the extremizer is piecewise here, not a polynomial, so the dual-norm
    # bound approaches from below without closing
    assert doc["galerkin"]["gap"] > 0


def test_verify_power_weight(capsys):
    code, out, _ = run(capsys, "verify", "--k", "1", "--weight", "pow:1/2")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "agree"
    assert doc["pipeline_mu"] == pytest.approx(4.5, abs=1e-8)


def test_verify_flags_galerkin_degree(capsys):
    code, out, _ = run(
        capsys,
        "verify", "--k", "2", "--weight", "poly:1",
        "--galerkin-degree", "6", "--grid", "199",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["galerkin"]["N"] == 6
    assert doc["galerkin"]["gap"] == 0.0
    assert doc["verdict"] == "agree"


def test_verify_dirac(capsys):
    code, out, _ = run(capsys, "verify", "--k", "1", "--weight", "dirac:1/2")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "agree"
    # kinked extremizer: the polynomial lower bound stays strictly below
    assert doc["galerkin"]["gap"] > 1e-3
    assert doc["sign_iteration"]["within_5pct"] is True


def test_sweep_power(capsys):
    code, out, _ = run(
        capsys,
        "sweep", "--k", "1", "--param", "power",
        "--start", "0", "--stop", "1/2", "--step", "1/4",
    )
    assert code == 0
    rows = [[float(v) for v in r.split(",")] for r in out.strip().split("\n")[1:]]
    assert len(rows) == 3
    # alpha = 0 reduces to the uniform weight, alpha = 1/2 was derived by hand
    assert rows[0][1] == pytest.approx(12.0, abs=1e-8)
    assert rows[2][1] == pytest.approx(4.5, abs=1e-8)


def test_sweep_dirac(capsys):
    code, out, _ = run(
        capsys,
        "sweep", "--k", "1", "--param", "dirac",
        "--start", "1/10", "--stop", "9/10", "--step", "1/10",
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "param,mu,lambda"
    rows = [[float(v) for v in line.split(",")] for line in lines[1:]]
    assert len(rows) == 9
    for a, mu, lam in rows:
        assert mu == pytest.approx(1.0 / (a * (1.0 - a)), rel=1e-12)
        assert lam == pytest.approx(1.0 / math.sqrt(mu), rel=1e-12)
    # reflection symmetry of the family
    for i in range(4):
        assert rows[i][1] == pytest.approx(rows[8 - i][1], rel=1e-12)
    # ascending parameter order
    assert [r[0] for r in rows] == sorted(r[0] for r in rows)


def test_sweep_indicator_shrinks_to_dirac(capsys):
    code, out, _ = run(
        capsys,
        "sweep", "--k", "1", "--param", "indicator", "--center", "1/2",
        "--start", "1/20", "--stop", "2/5", "--step", "1/20",
    )
    assert code == 0
    rows = [
        [float(v) for v in line.split(",")]
        for line in out.strip().split("\n")[1:]
    ]
    mus = [r[1] for r in rows]
    # mu(eps) = 12/(3 - 4 eps) decreases to the point-mass value 4 as eps -> 0
    assert all(a < b for a, b in zip(mus, mus[1:]))
    assert mus[0] == pytest.approx(12.0 / (3.0 - 4.0 * 0.05), rel=1e-12)
    assert mus[0] > 4.0


def test_exit_code_input_error(capsys):
    code, _, err = run(capsys, "constant", "--k", "1", "--weight", "chi:3/4,1/4")
    assert code == 2
    assert "error" in err
    code, _, err = run(capsys, "constant", "--k", "1", "--weight", "poly:1 +")
    assert code == 2


def test_exit_code_solver_error(capsys):
    code, _, err = run(capsys, "constant", "--k", "1", "--weight", "poly:0")
    assert code == 3
    assert "solver error" in err


def test_out_file(tmp_path, capsys):
    path = tmp_path / "result.json"
    code, out, _ = run(
        capsys, "constant", "--k", "1", "--weight", "poly:1", "--out", str(path)
    )
    assert code == 0
    assert out == ""
    doc = json.loads(path.read_text())
    assert doc["mu_exact"] == "12"


def test_csv_line_endings(tmp_path, capsys):
    path = tmp_path / "u.csv"
    run(
        capsys,
        "minimizer", "--k", "1", "--weight", "poly:1",
        "--samples", "3", "--out", str(path),
    )
    raw = path.read_bytes()
    assert b"\r" not in raw
    assert raw.decode().splitlines()[0] == "x,u,u_k"


def test_format_mismatch_rejected(capsys):
    code, _, err = run(
        capsys, "constant", "--k", "1", "--weight", "poly:1", "--format", "csv"
    )
    assert code == 2


def test_config_file_defaults_and_precedence(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "sobolev.conf"
    cfg.write_text("samples=4\nmode=exact\n# comment\n")
    monkeypatch.setenv("SOBOLEV_CONFIG", str(cfg))
    _, out, _ = run(capsys, "minimizer", "--k", "1", "--weight", "poly:1")
    assert len(out.strip().split("\n")) == 1 + 4  # header + config samples
    # explicit flag wins over the file
    _, out, _ = run(
        capsys, "minimizer", "--k", "1", "--weight", "poly:1", "--samples", "6"
    )
    assert len(out.strip().split("\n")) == 1 + 6


def test_config_file_unknown_key(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "bad.conf"
    cfg.write_text("samples=4\nwhat=1\n")
    monkeypatch.setenv("SOBOLEV_CONFIG", str(cfg))
    code, _, err = run(capsys, "constant", "--k", "1", "--weight", "poly:1")
    assert code == 2
