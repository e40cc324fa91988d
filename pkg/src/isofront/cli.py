"""Command-line interface: run, riemann, compare, convert, audit, budgets.

Exit codes: 0 success, 1 invalid configuration, 2 budget violation,
3 internal-consistency failure.
"""
from __future__ import annotations

import argparse
import bisect
import dataclasses
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import analysis, io, presets
from .engine import run as run_engine
from .errors import BudgetError, ConfigError, ConsistencyError, SolverError
from .params import SchemeParams
from .riemann import solve_intermediate
from .states import LogState, State, rel_entropy
from .weight import compute_budgets

_PARAM_FIELDS = {f.name for f in dataclasses.fields(SchemeParams)}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="isofront", description="Front-tracking runs for the "
                "isothermal p-system and their diagnostics.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="execute one configured run")
    r.add_argument("--config", required=True)
    r.add_argument("--out", default=None, help="override the output directory")

    q = sub.add_parser("riemann", help="print one wave decomposition")
    q.add_argument("--wl", type=float, required=True)
    q.add_argument("--vl", type=float, required=True)
    q.add_argument("--wr", type=float, required=True)
    q.add_argument("--vr", type=float, required=True)

    c = sub.add_parser("compare", help="weighted relative-entropy series "
                       "between two run directories")
    c.add_argument("--u", required=True, help="reference run directory")
    c.add_argument("--psi", required=True, help="weighted run directory")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--out", default=None)

    v = sub.add_parser("convert", help="snapshots to physical coordinates")
    v.add_argument("--run", required=True)
    v.add_argument("--out", default=None)

    a = sub.add_parser("audit", help="re-verify a stored event log")
    a.add_argument("--events", required=True)
    a.add_argument("--summary", default=None)

    b = sub.add_parser("budgets", help="print the budget constants")
    b.add_argument("--v", type=float, required=True)
    b.add_argument("--leftw", type=float, default=0.0)
    b.add_argument("--epsilon", type=float, default=0.5)
    b.add_argument("--delta", type=float, default=0.05)
    b.add_argument("--c0", type=float, default=1.0)
    b.add_argument("--c1", type=float, default=0.2)
    return p


def load_config(path: str | Path):
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}")
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"bad config {path}: {exc}")
    ptab = raw.get("params", {})
    unknown = set(ptab) - _PARAM_FIELDS
    if unknown:
        raise ConfigError(f"unknown params keys: {sorted(unknown)}")
    try:
        params = SchemeParams(**ptab)
    except TypeError as exc:
        raise ConfigError(str(exc))
    dtab = dict(raw.get("data", {}))
    preset = dtab.pop("preset", None)
    if preset is None:
        raise ConfigError("config needs data.preset")
    otab = raw.get("output", {})
    out_dir = otab.get("dir", "run_out")
    times = [float(t) for t in otab.get("snapshot_times", [])]
    if any(t < 0.0 or t > params.t_end for t in times):
        raise ConfigError("snapshot_times must lie in [0, t_end]")
    return params, preset, dtab, out_dir, times


def _cmd_run(args) -> int:
    params, preset, dopts, out_dir, times = load_config(args.config)
    if args.out is not None:
        out_dir = args.out
    u0 = presets.build_preset(preset, params, dopts)
    record = run_engine(params, u0, snapshot_times=times)
    report = analysis.audit(record)
    io.write_run_dir(record, report, out_dir)
    print(f"run finished: {len(record.events)} events, "
          f"V={record.budget_constants.V:.6g}, out={out_dir}")
    if not report.passed:
        failed = [c.name for c in report.checks if not c.passed]
        print(f"budget violations: {failed}", file=sys.stderr)
        return 2
    return 0


def _cmd_riemann(args) -> int:
    ul = LogState(w=args.wl, v=args.vl)
    ur = LogState(w=args.wr, v=args.vr)
    dec = solve_intermediate(ul, ur)
    for name, val in (("sigma1", dec.sigma1), ("sigma2", dec.sigma2),
                      ("w_m", dec.w_m), ("v_m", dec.v_m)):
        print(f"{name} = {io.fmt_real(val)}")
    for fam, s in ((1, dec.sigma1), (2, dec.sigma2)):
        kind = "shock" if s > 0 else ("rarefaction" if s < 0 else "nothing")
        print(f"{fam}-wave: {kind}, strength {io.fmt_real(abs(s))}")
    return 0


def _profile_lookup(rows, x: float):
    """State and weight on the region containing x; rows are
    (x_left, w, tau, v, a_left) with the first x_left = -inf."""
    edges = [r[0] for r in rows[1:]]
    return rows[bisect.bisect_right(edges, x)]


def _cone_integral(rows_u, rows_psi, cone):
    lo, hi = cone
    cuts = sorted({lo, hi,
                   *(r[0] for r in rows_u[1:] if lo < r[0] < hi),
                   *(r[0] for r in rows_psi[1:] if lo < r[0] < hi)})
    total = 0.0
    for a, b in zip(cuts, cuts[1:]):
        m = 0.5 * (a + b)
        _, _, tau_u, v_u, _ = _profile_lookup(rows_u, m)
        _, _, tau_p, v_p, a_left = _profile_lookup(rows_psi, m)
        total += (b - a) * a_left * rel_entropy(State(tau_u, v_u), State(tau_p, v_p))
    return total


def _load_run_dir(path: str | Path):
    base = Path(path)
    try:
        with open(base / io.SUMMARY_FILE) as fh:
            summary = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read run directory {path}: {exc}")
    profiles = io.read_snapshot_profiles(base / io.SNAPSHOTS_FILE)
    return summary, profiles


def _cmd_compare(args) -> int:
    summary, psi_profiles = _load_run_dir(args.psi)
    _, u_profiles = _load_run_dir(args.u)
    times = sorted(set(psi_profiles) & set(u_profiles))
    if not times:
        raise ConfigError("the two runs share no snapshot times")
    p = summary["params"]
    R = p["domain_radius"]
    l = p.get("cone_speed")
    if l is None:
        l = 1.01 * math.exp(summary["budget_constants"]["K1"])
    jobs = max(1, args.jobs)

    def one(t):
        lo, hi = analysis.cone_interval(t, R, l)
        if hi <= lo:
            raise ConfigError(f"empty cone at t={t}; shrink t or raise R")
        return t, _cone_integral(u_profiles[t], psi_profiles[t], (lo, hi))

    if jobs == 1:
        series = [one(t) for t in times]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            series = list(ex.map(one, times))
    lines = ["t,weighted_rel_entropy"]
    lines += [f"{io.fmt_real(t)},{io.fmt_real(v)}" for t, v in series]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_convert(args) -> int:
    summary, profiles = _load_run_dir(args.run)
    R = summary["params"]["domain_radius"]
    lines = ["t,y_left,y_right,rho,v"]
    for t in sorted(profiles):
        rows = profiles[t]
        v_left = rows[0][3]
        y = -R + v_left * t
        edges = [-R] + sorted({r[0] for r in rows[1:] if -R < r[0] < R}) + [R]
        for a, b in zip(edges, edges[1:]):
            _, _, tau, v, _ = _profile_lookup(rows, 0.5 * (a + b))
            y_next = y + tau * (b - a)
            lines.append(",".join(io.fmt_real(x)
                                  for x in (t, y, y_next, 1.0 / tau, v)))
            y = y_next
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_audit(args) -> int:
    result = io.audit_events(args.events, args.summary)
    print(f"audit ok: {result['n_events']} events, L={result['L']}, "
          f"Q={io.fmt_real(result['Q'])}")
    return 0


def _cmd_budgets(args) -> int:
    params = SchemeParams(delta=args.delta, epsilon=args.epsilon,
                          c0=args.c0, c1=args.c1)
    bc = compute_budgets(args.v, args.leftw, params)
    print(json.dumps(io._jsonable(dataclasses.asdict(bc)), indent=1))
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "riemann": _cmd_riemann,
    "compare": _cmd_compare,
    "convert": _cmd_convert,
    "audit": _cmd_audit,
    "budgets": _cmd_budgets,
}


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except BudgetError as exc:
        print(f"budget violation: {exc}", file=sys.stderr)
        return 2
    except (ConsistencyError, SolverError) as exc:
        print(f"consistency error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
