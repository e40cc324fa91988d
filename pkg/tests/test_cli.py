import json
import math
from pathlib import Path

import pytest

from isofront.cli import main
from isofront.io import read_events


def write_config(path, body):
    path.write_text(body)
    return str(path)


CONSTANT_CONFIG = """
[params]
delta = 0.05
epsilon = 0.5
t_end = 1.0
domain_radius = 2.0

[data]
preset = "riemann"
tau_l = 1.0
v_l = 0.0
tau_r = 1.0
v_r = 0.0

[output]
dir = "{out}"
snapshot_times = [0.0, 0.5, 1.0]
"""

RANDOM_CONFIG = """
[params]
delta = 0.05
epsilon = 0.5
t_end = 0.8
domain_radius = 4.0

[data]
preset = "random-bv"
seed = 11
n_steps = 30
radius = 3.0
amp_w = 0.06
amp_v = 0.06

[output]
dir = "{out}"
snapshot_times = [0.0, 0.4, 0.8]
"""


def test_run_constant_data(tmp_path, capsys):
    out = tmp_path / "const"
    cfg = write_config(tmp_path / "c.toml",
                       CONSTANT_CONFIG.format(out=out.as_posix()))
    assert main(["run", "--config", cfg]) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["n_events"] == 0
    assert summary["budget_constants"]["V"] == 0.0
    assert (out / "events.ndjson").read_text() == ""
    assert (out / "snapshots.csv").read_text().startswith("t,x_left,w,tau,v,a_left")


def test_run_and_audit_round_trip(tmp_path):
    out = tmp_path / "rnd"
    cfg = write_config(tmp_path / "c.toml",
                       RANDOM_CONFIG.format(out=out.as_posix()))
    assert main(["run", "--config", cfg]) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["n_events"] > 0
    assert summary["budget_report"]["passed"] is True
    assert main(["audit", "--events", str(out / "events.ndjson"),
                 "--summary", str(out / "summary.json")]) == 0


def test_audit_detects_tampered_variation(tmp_path):
    out = tmp_path / "rnd"
    cfg = write_config(tmp_path / "c.toml",
                       RANDOM_CONFIG.format(out=out.as_posix()))
    assert main(["run", "--config", cfg]) == 0
    events_path = out / "events.ndjson"
    lines = events_path.read_text().splitlines()
    rec = json.loads(lines[0])
    rec["dB"] = 0.25
    lines[0] = json.dumps(rec)
    events_path.write_text("\n".join(lines) + "\n")
    assert main(["audit", "--events", str(events_path)]) == 3


def test_audit_detects_tampered_q(tmp_path):
    out = tmp_path / "rnd"
    cfg = write_config(tmp_path / "c.toml",
                       RANDOM_CONFIG.format(out=out.as_posix()))
    assert main(["run", "--config", cfg]) == 0
    events_path = out / "events.ndjson"
    lines = events_path.read_text().splitlines()
    rec = json.loads(lines[-1])
    rec["Q_after"] = rec["Q_after"] * 0.5
    lines[-1] = json.dumps(rec)
    events_path.write_text("\n".join(lines) + "\n")
    assert main(["audit", "--events", str(events_path)]) == 3


def test_events_round_trip_is_lossless(tmp_path):
    out = tmp_path / "rnd"
    cfg = write_config(tmp_path / "c.toml",
                       RANDOM_CONFIG.format(out=out.as_posix()))
    assert main(["run", "--config", cfg]) == 0
    records = read_events(out / "events.ndjson")
    replay_q = 1.0
    for r in records:
        replay_q *= r["q_factor"]
    assert records[-1]["Q_after"] == pytest.approx(replay_q, rel=1e-9)


def test_riemann_command(capsys):
    w = 2.0 * math.sinh(0.5)
    assert main(["riemann", "--wl", "0", "--vl", "0",
                 "--wr", "1", "--vr", f"{-w:.17g}"]) == 0
    text = capsys.readouterr().out
    lines = dict(l.split(" = ") for l in text.splitlines() if " = " in l)
    assert float(lines["sigma1"]) == pytest.approx(1.0, abs=1e-10)
    assert float(lines["sigma2"]) == pytest.approx(0.0, abs=1e-10)


def test_budgets_command(capsys):
    assert main(["budgets", "--v", "1.0", "--leftw", "0.0"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["Lambda"] == 30
    assert data["a_max"] == pytest.approx(math.e / 0.2 ** 4, rel=1e-10)


def test_compare_command(tmp_path, capsys):
    dirs = []
    for name, delta in (("coarse", 0.2), ("fine", 0.05)):
        out = tmp_path / name
        cfg = write_config(tmp_path / f"{name}.toml", f"""
[params]
delta = {delta}
epsilon = 0.5
t_end = 0.5
domain_radius = 4.0

[data]
preset = "riemann"
tau_l = 2.0
v_l = 0.3
tau_r = 0.8
v_r = -0.2

[output]
dir = "{out.as_posix()}"
snapshot_times = [0.0, 0.25, 0.5]
""")
        assert main(["run", "--config", cfg]) == 0
        dirs.append(out)
    capsys.readouterr()
    assert main(["compare", "--u", str(dirs[1]), "--psi", str(dirs[0]),
                 "--jobs", "2"]) == 0
    text = capsys.readouterr().out
    rows = [l.split(",") for l in text.splitlines()[1:]]
    assert len(rows) == 3
    for _, val in rows:
        v = float(val)
        assert math.isfinite(v) and v >= 0.0


def test_convert_command(tmp_path, capsys):
    out = tmp_path / "rnd"
    cfg = write_config(tmp_path / "c.toml",
                       RANDOM_CONFIG.format(out=out.as_posix()))
    assert main(["run", "--config", cfg]) == 0
    capsys.readouterr()
    assert main(["convert", "--run", str(out)]) == 0
    text = capsys.readouterr().out
    lines = text.splitlines()
    assert lines[0] == "t,y_left,y_right,rho,v"
    assert len(lines) > 3
    for l in lines[1:4]:
        t, y0, y1, rho, v = (float(x) for x in l.split(","))
        assert y1 > y0 and rho > 0.0


def test_bad_config_exits_1(tmp_path):
    cfg = write_config(tmp_path / "bad.toml", "[params]\ndelta = -1.0\n")
    assert main(["run", "--config", cfg]) == 1
    assert main(["run", "--config", str(tmp_path / "missing.toml")]) == 1
    assert main(["frobnicate"]) == 1
