"""Initial-data presets: named generators of piecewise-constant profiles."""
from __future__ import annotations

import csv
import math
import random
from pathlib import Path

from .engine import PiecewiseConstant
from .errors import ConfigError
from .params import SchemeParams
from .riemann import apply_wave_curve
from .states import LogState, State, from_log, to_log


def riemann_data(left: State, right: State, x_jump: float = 0.0) -> PiecewiseConstant:
    """A single jump at x_jump."""
    return PiecewiseConstant(xs=(x_jump,), states=(left, right))


def two_shock_data(
    base: State, sigma_2: float = 0.8, sigma_1: float = 0.8,
    x_left: float = -1.0, x_right: float = 1.0,
) -> PiecewiseConstant:
    """Two approaching big shocks: a 2-shock at x_left and a 1-shock at
    x_right, built exactly on the wave curves so each initial jump
    produces a single front."""
    if sigma_1 <= 0.0 or sigma_2 <= 0.0:
        raise ConfigError("shock strengths must be positive")
    u0 = to_log(base)
    u1 = apply_wave_curve(2, sigma_2, u0)
    u2 = apply_wave_curve(1, sigma_1, u1)
    return PiecewiseConstant(
        xs=(x_left, x_right),
        states=(base, from_log(u1), from_log(u2)),
    )


def random_bv_data(
    seed: int,
    n_steps: int = 100,
    amp_w: float = 0.03,
    amp_v: float = 0.03,
    radius: float = 9.0,
    w0: float = 0.0,
    v0: float = 0.0,
) -> PiecewiseConstant:
    """Random-walk profile in (w, v): n_steps jumps spread over
    [-radius, radius], deterministic in the seed."""
    if n_steps < 1:
        raise ConfigError("need at least one step")
    rng = random.Random(seed)
    w, v = w0, v0
    states = [State(tau=math.exp(-w), v=v)]
    xs = []
    for j in range(n_steps):
        w += rng.uniform(-amp_w, amp_w)
        v += rng.uniform(-amp_v, amp_v)
        xs.append(-radius + (j + 0.5) * 2.0 * radius / n_steps)
        states.append(State(tau=math.exp(-w), v=v))
    return PiecewiseConstant(xs=tuple(xs), states=tuple(states))


def file_data(path: str | Path) -> PiecewiseConstant:
    """Profile from a CSV of rows (x_left, tau, v); the first row's
    x_left must be -inf (the leftmost constant state)."""
    rows = []
    with open(path, newline="") as fh:
        for rec in csv.reader(fh):
            if not rec or rec[0].startswith("#") or rec[0] == "x_left":
                continue
            rows.append((float(rec[0]), float(rec[1]), float(rec[2])))
    if not rows or not math.isinf(rows[0][0]):
        raise ConfigError(f"{path}: first data row must start at -inf")
    states = [State(tau=r[1], v=r[2]) for r in rows]
    xs = tuple(r[0] for r in rows[1:])
    return PiecewiseConstant(xs=xs, states=tuple(states))


def build_preset(name: str, params: SchemeParams, options: dict) -> PiecewiseConstant:
    """Dispatch a preset by name with its option table."""
    opts = dict(options)
    if name == "riemann":
        return riemann_data(
            State(tau=float(opts.get("tau_l", 1.0)), v=float(opts.get("v_l", 0.0))),
            State(tau=float(opts.get("tau_r", 1.0)), v=float(opts.get("v_r", 0.0))),
            x_jump=float(opts.get("x_jump", 0.0)),
        )
    if name == "two-shock":
        return two_shock_data(
            State(tau=float(opts.get("tau_base", 1.0)), v=float(opts.get("v_base", 0.0))),
            sigma_2=float(opts.get("sigma_2", 0.8)),
            sigma_1=float(opts.get("sigma_1", 0.8)),
            x_left=float(opts.get("x_left", -1.0)),
            x_right=float(opts.get("x_right", 1.0)),
        )
    if name == "random-bv":
        return random_bv_data(
            seed=int(opts.get("seed", params.seed)),
            n_steps=int(opts.get("n_steps", 100)),
            amp_w=float(opts.get("amp_w", 0.03)),
            amp_v=float(opts.get("amp_v", 0.03)),
            radius=float(opts.get("radius", 0.9 * params.domain_radius)),
            w0=float(opts.get("w0", 0.0)),
            v0=float(opts.get("v0", 0.0)),
        )
    if name == "file":
        if "path" not in opts:
            raise ConfigError("file preset needs a path")
        return file_data(opts["path"])
    raise ConfigError(f"unknown data preset {name!r}")
