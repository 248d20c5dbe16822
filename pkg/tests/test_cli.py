import json

import pytest
from click.testing import CliRunner

from monodimer.cli import main
from monodimer.fixtures import example_plane_graph
from monodimer.plane_graph import canonical_orientation, graph_to_json


@pytest.fixture
def runner():
    return CliRunner()


def _json_out(result):
    assert result.exit_code == 0, result.output
    return json.loads(result.output)


def test_pf_dims_exact(runner):
    res = runner.invoke(main, ["pf", "--dims", "2,2,2", "--exact"])
    out = _json_out(res)
    poly = out["outputs"]["polynomial"]
    # (x^2 + a1^2 + a2^2 + a3^2)^4 expanded has 35 terms
    assert out["outputs"]["num_terms"] == 35
    assert poly.startswith("a1^8")


def test_pf_dims_numeric(runner):
    res = runner.invoke(main, ["pf", "--dims", "2,2",
                               "--at", "x=1,a=1,b=1"])
    out = _json_out(res)
    # 2x2 grid at unit weights: (x^2+a^2+b^2)^2 = 9
    assert out["outputs"]["value"] == 9.0


def test_pf_graph_file(runner, tmp_path):
    g = example_plane_graph()
    path = tmp_path / "g.json"
    path.write_text(json.dumps(graph_to_json(g, canonical_orientation(g))))
    res = runner.invoke(main, ["pf", "--graph", str(path), "--exact"])
    out = _json_out(res)
    assert out["outputs"]["polynomial"] == (
        "a12^2*a34^2 + a12^2*x^2 + 2*a12*a14*a23*a34 + a13^2*x^2 "
        "+ a14^2*a23^2 + a14^2*x^2 + a23^2*x^2 + a34^2*x^2 + x^4"
    )


def test_pf_brute_matches_det(runner):
    a = _json_out(runner.invoke(main, ["pf", "--dims", "2,3", "--exact"]))
    b = _json_out(runner.invoke(main, ["pf", "--dims", "2,3", "--exact",
                                       "--brute"]))
    assert a["outputs"]["polynomial"] == b["outputs"]["polynomial"]


def test_pf_parse_error_exit_2(runner):
    assert runner.invoke(main, ["pf", "--dims", "frog"]).exit_code == 2
    assert runner.invoke(main, ["pf"]).exit_code == 2
    assert runner.invoke(
        main, ["pf", "--dims", "2,2", "--at", "x==oops"]).exit_code == 2


def test_pf_bad_graph_exit_2(runner, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert runner.invoke(
        main, ["pf", "--graph", str(path), "--exact"]).exit_code == 2


def test_pf_size_cap_exit_3(runner):
    res = runner.invoke(main, ["pf", "--dims", "5,5,5", "--exact"])
    assert res.exit_code == 3
    res = runner.invoke(main, ["pf", "--dims", "3,3,2", "--brute"])
    assert res.exit_code == 3


def test_verify_asymptotics(runner):
    res = runner.invoke(main, ["verify", "--suite", "asymptotics"])
    out = _json_out(res)
    assert out["outputs"]["all_pass"] is True
    rho_check = next(c for c in out["outputs"]["checks"]
                     if c["check"] == "rho3x matches 0.1705")
    assert rho_check["max_residual"] <= 1e-3


def test_verify_signs_reproducible(runner):
    args = ["verify", "--suite", "signs", "--trials", "10", "--seed", "7"]
    a = _json_out(runner.invoke(main, args))
    b = _json_out(runner.invoke(main, args))
    a.pop("timing_s")
    b.pop("timing_s")
    assert a == b


def test_closed_form_log(runner):
    res = runner.invoke(main, ["closed-form", "--dims", "10,10,10", "--log"])
    out = _json_out(res)
    assert out["outputs"]["log_space"] is True
    assert out["outputs"]["log_value"] == pytest.approx(889.174838942, abs=1e-6)
    assert "value" not in out["outputs"]


def test_density_csv(runner, tmp_path):
    path = tmp_path / "d.csv"
    res = runner.invoke(main, ["density", "--dim", "3", "--csv", str(path)])
    out = _json_out(res)
    assert out["outputs"]["report"]["rho_x"] == pytest.approx(0.1705, abs=1e-3)
    lines = path.read_text().splitlines()
    assert lines[0] == "d,rho_x,rho_a1,rho_a2,rho_a3,phi,est_error"
    assert lines[1].startswith("3,0.170523806949,")


def test_density_sweep(runner, tmp_path):
    path = tmp_path / "sweep.csv"
    res = runner.invoke(main, ["density-sweep", "--dims", "3..5",
                               "--csv", str(path)])
    out = _json_out(res)
    rows = out["outputs"]["rows"]
    vals = [r["rho_x"] for r in rows]
    assert vals == sorted(vals, reverse=True)
    lines = path.read_text().splitlines()
    assert lines[0] == "d,rho_x,est_error"
    assert len(lines) == 4


def test_density_sweep_bad_range(runner):
    assert runner.invoke(
        main, ["density-sweep", "--dims", "8..3"]).exit_code == 2
