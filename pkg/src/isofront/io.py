"""Bit-stable run-directory serialization and the event-log auditor.

All reals are written with 17 significant digits so parsing them back
reproduces the exact doubles.
"""
from __future__ import annotations

import dataclasses
import json
import math
from pathlib import Path

from .analysis import BudgetReport, weight_profile
from .engine import RunRecord, Snapshot
from .errors import ConsistencyError
from .params import SchemeParams
from .states import from_log

EVENTS_FILE = "events.ndjson"
SNAPSHOTS_FILE = "snapshots.csv"
SUMMARY_FILE = "summary.json"


def fmt_real(x: float) -> str:
    if math.isinf(x):
        return "-inf" if x < 0 else "inf"
    return f"{x:.17g}"


def _jsonable(x):
    if isinstance(x, float):
        return float(fmt_real(x))
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def event_record(ev) -> dict:
    return {
        "t": float(fmt_real(ev.t)),
        "x": float(fmt_real(ev.x)),
        "case": ev.case_code,
        "in_ids": list(ev.in_ids),
        "out_ids": list(ev.out_ids),
        "dS": float(fmt_real(ev.dS)),
        "dB": float(fmt_real(ev.dB)),
        "dL": ev.dL,
        "q_factor": float(fmt_real(ev.q_factor)),
        "L_after": ev.L_after,
        "Q_after": float(fmt_real(ev.Q_after)),
    }


def write_events(run: RunRecord, path: Path) -> None:
    with open(path, "w") as fh:
        for ev in run.events:
            fh.write(json.dumps(event_record(ev)) + "\n")


def snapshot_rows(snap: Snapshot, params: SchemeParams):
    """One row per constant region: (t, x_left, w, tau, v, a_left)."""
    positions, avals = weight_profile(snap, params)
    states = snap.states()
    rows = []
    edges = [-math.inf] + positions
    for x_left, ls, a in zip(edges, states, avals):
        s = from_log(ls)
        rows.append((snap.time, x_left, ls.w, s.tau, s.v, a))
    return rows


def write_snapshots(run: RunRecord, path: Path) -> None:
    snaps = run.snapshots if run.snapshots else (run.final_snapshot,)
    with open(path, "w") as fh:
        fh.write("t,x_left,w,tau,v,a_left\n")
        for snap in snaps:
            for row in snapshot_rows(snap, run.params):
                fh.write(",".join(fmt_real(v) for v in row) + "\n")


def summary_dict(run: RunRecord, report: BudgetReport) -> dict:
    S_end, B_end = run.series[-1][1], run.series[-1][2]
    return _jsonable({
        "params": dataclasses.asdict(run.params),
        "budget_constants": dataclasses.asdict(run.budget_constants),
        "budget_report": {
            "V": report.V,
            "passed": report.passed,
            "checks": [dataclasses.asdict(c) for c in report.checks],
        },
        "n_events": len(run.events),
        "case_counts": dict(sorted(run.case_counts.items())),
        "final": {"S": S_end, "B": B_end,
                  "L": run.series[-1][3], "Q": run.series[-1][4]},
        "a_range": list(run.a_range),
        "wall_time_s": run.wall_time,
    })


def write_run_dir(run: RunRecord, report: BudgetReport, out_dir: str | Path) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_events(run, out / EVENTS_FILE)
    write_snapshots(run, out / SNAPSHOTS_FILE)
    with open(out / SUMMARY_FILE, "w") as fh:
        json.dump(summary_dict(run, report), fh, indent=1)
        fh.write("\n")
    return out


def read_events(path: str | Path) -> list[dict]:
    records = []
    with open(path) as fh:
        for i, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise ConsistencyError(f"{path}:{i}: bad event record: {exc}")
    return records


def audit_events(events_path: str | Path, summary_path: str | Path | None = None) -> dict:
    """Replay a stored event log and re-verify its internal bookkeeping.

    Checks per record: dB <= 1e-12, q_factor in (0,1], dL consistent
    with the case code, L/Q running values equal the recorded ones, and
    non-decreasing times.  With a summary file, final totals must match.
    """
    records = read_events(events_path)
    L = 0
    Q = 1.0
    sum_dS = sum_dB = 0.0
    t_prev = -math.inf
    for i, r in enumerate(records, start=1):
        where = f"{events_path}: record {i}"
        if r["t"] < t_prev - 1e-15:
            raise ConsistencyError(f"{where}: event times decrease")
        t_prev = r["t"]
        if r["dB"] > 1e-12:
            raise ConsistencyError(f"{where}: dB={r['dB']} increases variation")
        if not 0.0 < r["q_factor"] <= 1.0:
            raise ConsistencyError(f"{where}: q_factor {r['q_factor']} outside (0,1]")
        expect_dL = 1 if r["case"] in ("1", "3B", "9B") else 0
        if r["dL"] != expect_dL:
            raise ConsistencyError(f"{where}: dL={r['dL']} wrong for case {r['case']}")
        L += r["dL"]
        Q *= r["q_factor"]
        if r["L_after"] != L:
            raise ConsistencyError(f"{where}: L_after={r['L_after']}, replay gives {L}")
        if abs(r["Q_after"] - Q) > 1e-9 * Q:
            raise ConsistencyError(f"{where}: Q_after={r['Q_after']}, replay gives {Q}")
        Q = r["Q_after"]
        sum_dS += r["dS"]
        sum_dB += r["dB"]
    result = {"n_events": len(records), "L": L, "Q": Q,
              "sum_dS": sum_dS, "sum_dB": sum_dB}
    if summary_path is not None:
        with open(summary_path) as fh:
            summary = json.load(fh)
        if summary.get("n_events") != len(records):
            raise ConsistencyError("event count disagrees with the summary")
        if abs(summary["final"]["Q"] - Q) > 1e-9 * max(Q, 1e-300):
            raise ConsistencyError("final Q disagrees with the summary")
        if summary["final"]["L"] != L:
            raise ConsistencyError("final L disagrees with the summary")
    return result


def read_snapshot_profiles(path: str | Path) -> dict:
    """Parse snapshots.csv into {t: (x_lefts, w, tau, v, a_left) lists}."""
    profiles: dict[float, list] = {}
    with open(path) as fh:
        header = fh.readline()
        if not header.startswith("t,"):
            raise ConsistencyError(f"{path}: missing header")
        for i, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 6:
                raise ConsistencyError(f"{path}:{i}: expected 6 columns")
            t = float(parts[0])
            profiles.setdefault(t, []).append(tuple(float(p) for p in parts[1:]))
    return profiles
