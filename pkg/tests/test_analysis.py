import math

import pytest

from isofront.analysis import (
    audit,
    cone_interval,
    entropy_admissible,
    eulerian_speed_bound,
    eulerian_speed_check,
    eulerian_to_breakpoints,
    functionals,
    realized_box,
    to_eulerian,
    weighted_rel_entropy,
)
from isofront.engine import PiecewiseConstant, Snapshot, run
from isofront.errors import ConfigError, ConsistencyError
from isofront.fronts import Front, WaveLabel, SHOCK, RAREFACTION, BIG, SMALL
from isofront.params import SchemeParams
from isofront.presets import random_bv_data, riemann_data
from isofront.riemann import apply_wave_curve, fan_partition, shock_speed
from isofront.states import LogState, State, eigenvalues_log, to_log

PARAMS = SchemeParams(delta=0.05, epsilon=0.5, t_end=1.0, domain_radius=4.0)


def _shock(fid, family, sigma, size, x0, left=None):
    if left is None:
        left = LogState(0.0, 0.0)
    right = apply_wave_curve(family, sigma, left)
    return Front(id=fid, label=WaveLabel(family, SHOCK, size), left=left,
                 right=right, x0=x0, t0=0.0,
                 speed=shock_speed(left, right, family), birth_time=0.0)


def test_functionals_empty_and_mixed():
    empty = Snapshot(time=0.0, fronts=(), leftmost_state=LogState(0.0, 0.0))
    assert functionals(empty) == (0.0, 0.0)

    pieces = fan_partition(1, -0.25, LogState(0.0, 0.0), 0.1)
    fans = tuple(
        Front(id=10 + i, label=WaveLabel(1, RAREFACTION), left=p.left_state,
              right=p.right_state, x0=-3.0 + 0.1 * i, t0=0.0, speed=p.speed,
              birth_time=0.0)
        for i, p in enumerate(pieces)
    )
    fronts = (_shock(1, 1, 0.1, SMALL, -1.0), _shock(2, 2, 0.8, BIG, 1.0)) + fans
    snap = Snapshot(time=0.0, fronts=fronts, leftmost_state=LogState(0.0, 0.0))
    S, B = functionals(snap)
    assert S == pytest.approx(0.1, abs=1e-12)
    assert B == pytest.approx(1.15, abs=1e-12)


def test_entropy_admissible_and_reversed():
    f = _shock(1, 1, 0.4, SMALL, 0.0)
    assert entropy_admissible(f)
    reversed_front = Front(id=2, label=f.label, left=f.right, right=f.left,
                           x0=0.0, t0=0.0, speed=f.speed, birth_time=0.0)
    assert not entropy_admissible(reversed_front)


def test_entropy_dissipation_vanishes_with_strength():
    from isofront.states import entropy, entropy_flux, from_log
    for sigma in (1e-2, 1e-4, 1e-6):
        f = _shock(1, 1, sigma, SMALL, 0.0)
        a, b = from_log(f.left), from_log(f.right)
        diss = -f.speed * (entropy(b) - entropy(a)) + (
            entropy_flux(b) - entropy_flux(a))
        assert diss <= 1e-12
        assert abs(diss) < sigma ** 2


def test_audit_trivial_runs():
    const = PiecewiseConstant(xs=(0.0,), states=(State(1.0, 0.0), State(1.0, 0.0)))
    rec = run(PARAMS, const)
    rep = audit(rec)
    assert rep.passed and rep.V == 0.0

    rec = run(PARAMS, riemann_data(State(2.0, 0.3), State(0.8, -0.2)))
    rep = audit(rec)
    assert rep.passed
    assert rep.V == pytest.approx(functionals(rec.initial_snapshot)[1])


def test_audit_flags_out_of_budget_weight():
    rec = run(PARAMS, riemann_data(State(2.0, 0.3), State(0.8, -0.2)))
    bad = rec.__class__(**{**rec.__dict__, "a_range": (0.0, 1e12)})
    rep = audit(bad)
    assert not rep.passed
    assert not rep.by_name("a_max").passed


def test_weighted_rel_entropy_self_is_zero():
    rec = run(PARAMS, riemann_data(State(2.0, 0.3), State(0.8, -0.2)),
              snapshot_times=[0.5])
    snap = rec.snapshots[0]
    val = weighted_rel_entropy(snap, snap, PARAMS, (-2.0, 2.0))
    assert val == 0.0


def test_weighted_rel_entropy_empty_cone():
    rec = run(PARAMS, riemann_data(State(2.0, 0.3), State(0.8, -0.2)),
              snapshot_times=[0.5])
    snap = rec.snapshots[0]
    with pytest.raises(ConfigError):
        weighted_rel_entropy(snap, snap, PARAMS, (1.0, -1.0))


def test_weighted_rel_entropy_perturbation_is_small():
    rec = run(PARAMS, riemann_data(State(2.0, 0.3), State(0.8, -0.2)),
              snapshot_times=[0.5])
    snap = rec.snapshots[0]
    for d in (0.02, 0.01, 0.005):
        shifted = Snapshot(
            time=snap.time,
            fronts=tuple(f.__class__(**{**f.__dict__, "x0": f.x0 + d})
                         for f in snap.fronts),
            leftmost_state=snap.leftmost_state, weight=snap.weight)
        val = weighted_rel_entropy(shifted, snap, PARAMS, (-2.0, 2.0))
        assert 0.0 <= val < 10.0 * d


def test_cone_interval():
    assert cone_interval(0.5, 4.0, 2.0) == (-3.0, 3.0)


def test_to_eulerian_example_and_mass():
    u0 = PiecewiseConstant(xs=(0.0,), states=(State(2.0, 0.0), State(2.0, 0.0)))
    snap = Snapshot(time=0.0, fronts=(), leftmost_state=to_log(State(2.0, 0.1)))
    e = to_eulerian(snap, y_anchor=0.0, x_window=(0.0, 1.0))
    assert e.ys == (0.0, 2.0)
    assert e.rhos == (0.5,)
    assert e.total_mass() == pytest.approx(1.0, rel=1e-15)


def test_eulerian_round_trip():
    rec = run(PARAMS, riemann_data(State(2.0, 0.3), State(0.8, -0.2)),
              snapshot_times=[0.5])
    snap = rec.snapshots[0]
    window = (-4.0, 4.0)
    e = to_eulerian(snap, y_anchor=-4.0, x_window=window)
    xs = eulerian_to_breakpoints(e)
    assert xs[0] == window[0]
    assert xs == pytest.approx(list(e.xs), abs=1e-10)
    mass = e.total_mass()
    assert mass == pytest.approx(window[1] - window[0], rel=1e-12)


def test_eulerian_speed_check_on_run():
    u0 = random_bv_data(seed=9, n_steps=30, radius=3.0, amp_w=0.06, amp_v=0.06)
    p = SchemeParams(delta=0.05, t_end=1.0, domain_radius=4.0)
    rec = run(p, u0, snapshot_times=[0.2, 0.25])
    c_hat, C_hat, M_hat, lam_hat = realized_box(rec)
    bound = eulerian_speed_bound(c_hat, C_hat, M_hat, lam_hat)
    s1, s2 = rec.snapshots
    v_left = s1.leftmost_state.v
    window = (-6.0, 6.0)
    e1 = to_eulerian(s1, y_anchor=-6.0 + v_left * s1.time, x_window=window)
    e2 = to_eulerian(s2, y_anchor=-6.0 + v_left * s2.time, x_window=window)
    assert eulerian_speed_check(e1, e2, bound)
    assert not eulerian_speed_check(e1, e2, bound * 1e-9)
