import csv
import json
import math
import re

import pytest

from margulis.cli import main


def run(tmp_path, *argv):
    try:
        return main([*argv, "--out", str(tmp_path)])
    except SystemExit as exc:  # argparse usage errors
        return exc.code


def load(path):
    return json.loads(path.read_text())


def strip_volatile(report):
    report = dict(report)
    report.pop("timestamp")
    report.pop("argv")
    report["result"].pop("files", None)
    return report


def test_construct_preset(tmp_path):
    assert run(tmp_path, "construct", "--n", "3", "--preset", "schottky") == 0
    rep = load(tmp_path / "construct_n3.json")
    assert rep["passed"] and rep["result"]["certificate"]["min_alpha"] > 0
    assert rep["config"]["preset"] == "schottky"
    assert (tmp_path / "configuration_n3.svg").exists()


def test_construct_default_group_fails_strict(tmp_path):
    assert run(tmp_path, "construct", "--n", "3") == 1
    rep = load(tmp_path / "construct_n3.json")
    assert rep["result"]["witness"]["error"] == "NoSystemFound"


def test_construct_relaxed_default_group(tmp_path):
    assert run(tmp_path, "construct", "--n", "3", "--allow-non-schottky") == 0
    assert run(tmp_path, "construct", "--n", "4", "--allow-non-schottky") == 1
    cert = load(tmp_path / "construct_n4.json")["result"]["witness"]["certificate"]
    assert "ghGH" in cert["nonhyperbolic"]


def test_alpha_csv_one_row_per_class(tmp_path):
    assert run(tmp_path, "construct", "--n", "5", "--preset", "schottky", "--no-plot") == 0
    with open(tmp_path / "alpha_n5.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["word", "length", "alpha"]
    words = [r[0] for r in rows[1:]]
    assert len(words) == len(set(words))
    assert len(words) == load(tmp_path / "construct_n5.json")["result"]["certificate"]["words_checked"]
    assert all(float(r[2]) > 0 for r in rows[1:])


@pytest.mark.parametrize("argv", [
    ["construct", "--n", "1", "--lambda-g", "1.5"],
    ["construct", "--n", "0"],
    ["construct"],
    ["check", "nonsense"],
    ["construct", "--n", "2", "--preset", "nope"],
    ["construct", "--n", "2", "--axis-g", "0", "0", "1"],
])
def test_usage_errors(tmp_path, argv):
    assert run(tmp_path, *argv) == 2


def test_env_tolerance(tmp_path, monkeypatch):
    monkeypatch.setenv("MARGULIS_TOL", "1e-7")
    assert run(tmp_path, "check", "transversal") == 0
    assert load(tmp_path / "check_transversal.json")["config"]["tolerance"] == 1e-7
    monkeypatch.setenv("MARGULIS_TOL", "abc")
    assert run(tmp_path, "check", "transversal") == 2


def test_config_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"lambda_g": math.exp(-3), "lambda_h": math.exp(-1.5)}))
    assert run(tmp_path, "check", "schottky", "--config", str(cfg)) == 0
    cfg.write_text(json.dumps({"lambda_q": 0.5}))
    assert run(tmp_path, "check", "schottky", "--config", str(cfg)) == 2


@pytest.mark.parametrize("which, preset, code", [
    ("transversal", "example", 0),
    ("schottky", "schottky", 0),
    ("schottky", "example", 1),
    ("propc", "schottky", 0),
    ("orderings", "schottky", 0),
])
def test_checks(tmp_path, which, preset, code):
    assert run(tmp_path, "check", which, "--depth", "5", "--preset", preset) == code
    rep = load(tmp_path / f"check_{which}.json")
    assert rep["passed"] == (code == 0)


def test_transversal_same_axes_fails(tmp_path):
    assert run(tmp_path, "check", "transversal", "--axis-h", "1", "0", "0") == 1


def test_propc_relaxed_fixture_has_witness(tmp_path):
    assert run(tmp_path, "check", "propc", "--depth", "6", "--allow-non-schottky") == 1
    assert load(tmp_path / "check_propc.json")["result"]["witness"]["word"] == "ghGH"


def test_alpha_table(tmp_path):
    assert run(tmp_path, "alpha-table", "--max-len", "4", "--preset", "schottky") == 0
    assert run(tmp_path, "alpha-table", "--max-len", "4") == 1
    rep = load(tmp_path / "alpha_table_L4.json")
    assert "ghGH" in rep["result"]["nonhyperbolic"]


def test_plot_outputs(tmp_path):
    assert run(tmp_path, "plot", "--n", "3", "--preset", "schottky") == 0
    svg = (tmp_path / "configuration_n3.svg").read_text()
    ids = set(re.findall(r'id="([^"]+)"', svg))
    for gid in ("arc-A_g^+", "arc-A_g^-", "arc-A_h^+", "arc-A_h^-", "arc-U^-", "arc-U_n^+", "arc-A",
                "ray-x+(g)", "ray-x+(gh)", "ray-x+(gh^2)", "ray-x+(gh^3)", "seed", "wedge-C-Hn-0"):
        assert gid in ids
    with open(tmp_path / "angles_n3.csv", newline="") as fh:
        rows = {r["label"]: r for r in csv.DictReader(fh)}
    # x+(g), x+(gh), x+(gh^2), ... increase counterclockwise from x+(A_g^+)
    offsets = [float(rows[k]["offset"]) for k in ("x+(g)", "x+(gh)", "x+(gh^2)", "x+(gh^3)", "g(x+(h))")]
    assert offsets == sorted(offsets) and len(set(offsets)) == len(offsets)
    assert float(rows["x-(A_g^+)"]["offset"]) > offsets[-1]


def test_plot_n1_upper_end_is_xplus_g(tmp_path):
    assert run(tmp_path, "plot", "--n", "1", "--preset", "schottky") == 0
    with open(tmp_path / "angles_n1.csv", newline="") as fh:
        rows = {r["label"]: float(r["theta"]) for r in csv.DictReader(fh)}
    assert rows["x-(U_n^+)"] == pytest.approx(rows["x+(g)"])


def test_reports_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert main(["construct", "--n", "2", "--preset", "schottky", "--out", str(out)]) == 0
    assert strip_volatile(load(a / "construct_n2.json")) == strip_volatile(load(b / "construct_n2.json"))
    assert (a / "alpha_n2.csv").read_bytes() == (b / "alpha_n2.csv").read_bytes()
    assert (a / "configuration_n2.svg").read_bytes() == (b / "configuration_n2.svg").read_bytes()
    assert set(load(a / "construct_n2.json")["timestamp"]) == {"utc", "wall_time_s"}
