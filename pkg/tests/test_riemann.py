import math
import random

import pytest

from isofront.errors import ConsistencyError
from isofront.riemann import (
    D_func,
    apply_wave_curve,
    fan_partition,
    intermediate_bracket,
    shock_speed,
    solve_intermediate,
    solve_w_m_bisection,
)
from isofront.states import LogState, W_func, eigenvalues_log, from_log


def random_state(rng, w_box=1.5, v_box=3.0):
    return LogState(w=rng.uniform(-w_box, w_box), v=rng.uniform(-v_box, v_box))


def test_wave_curve_directions():
    left = LogState(w=0.2, v=1.0)
    s1 = apply_wave_curve(1, 0.5, left)
    assert s1.w == 0.7 and s1.v == 1.0 - W_func(0.5)
    s2 = apply_wave_curve(2, 0.5, left)
    assert s2.w == pytest.approx(-0.3) and s2.v == 1.0 - W_func(0.5)
    r = apply_wave_curve(1, -0.4, left)
    assert r.v == 1.0 + 0.4


def test_pure_one_shock_decomposition():
    ul = LogState(w=0.0, v=0.0)
    ur = LogState(w=1.0, v=-W_func(1.0))
    dec = solve_intermediate(ul, ur)
    assert abs(dec.sigma1 - 1.0) < 1e-12
    assert abs(dec.sigma2) < 1e-12
    assert abs(dec.w_m - 1.0) < 1e-12


def test_recomposition_sweep():
    rng = random.Random(101)
    worst = 0.0
    for _ in range(2000):
        ul, ur = random_state(rng), random_state(rng)
        dec = solve_intermediate(ul, ur)
        mid = apply_wave_curve(1, dec.sigma1, ul)
        back = apply_wave_curve(2, dec.sigma2, mid)
        worst = max(worst, abs(back.w - ur.w) + abs(back.v - ur.v))
    assert worst < 1e-10


def test_newton_matches_bisection_oracle():
    rng = random.Random(7)
    for _ in range(500):
        ul, ur = random_state(rng), random_state(rng)
        m_newton = solve_intermediate(ul, ur).w_m
        m_bisect = solve_w_m_bisection(ul, ur)
        assert abs(m_newton - m_bisect) < 1e-10


def test_bracket_contains_root():
    rng = random.Random(11)
    for _ in range(200):
        ul, ur = random_state(rng), random_state(rng)
        lo, hi = intermediate_bracket(ul, ur)
        m = solve_intermediate(ul, ur).w_m
        assert lo - 1e-12 <= m <= hi + 1e-12


def test_shock_speed_satisfies_jump_conditions():
    rng = random.Random(23)
    for family in (1, 2):
        for _ in range(300):
            ul = random_state(rng)
            sigma = rng.uniform(1e-3, 1.2)
            ur = apply_wave_curve(family, sigma, ul)
            s = shock_speed(ul, ur, family)
            a, b = from_log(ul), from_log(ur)
            assert abs(s * (b.tau - a.tau) + (b.v - a.v)) < 1e-10
            assert abs(s * (b.v - a.v) - (1.0 / b.tau - 1.0 / a.tau)) < 1e-10


def test_shock_speed_lax_inequalities():
    rng = random.Random(29)
    for family in (1, 2):
        for _ in range(300):
            ul = random_state(rng)
            ur = apply_wave_curve(family, rng.uniform(1e-3, 1.2), ul)
            s = shock_speed(ul, ur, family)
            ll, lr = eigenvalues_log(ul), eigenvalues_log(ur)
            i = family - 1
            assert lr[i] < s < ll[i]


def test_shock_speed_rejects_rarefaction_data():
    ul = LogState(0.0, 0.0)
    ur = apply_wave_curve(1, -0.3, ul)
    with pytest.raises(ConsistencyError):
        shock_speed(ul, ur, 1)


def test_fan_partition_example():
    pieces = fan_partition(2, -0.25, LogState(0.0, 0.0), 0.1)
    assert len(pieces) == 3
    rights = [p.right_state.w for p in pieces]
    assert rights == pytest.approx([1.0 / 12.0, 1.0 / 6.0, 0.25], abs=1e-12)
    speeds = [p.speed for p in pieces]
    assert speeds == pytest.approx(
        [math.exp(1.0 / 12.0), math.exp(1.0 / 6.0), math.exp(0.25)], abs=1e-12
    )


def test_fan_speeds_strictly_increase():
    rng = random.Random(31)
    for family in (1, 2):
        for _ in range(200):
            left = random_state(rng)
            sigma = -rng.uniform(1e-3, 1.5)
            pieces = fan_partition(family, sigma, left, 0.05)
            speeds = [p.speed for p in pieces]
            assert all(a < b for a, b in zip(speeds, speeds[1:]))
            assert all(abs(p.right_state.w - p.left_state.w) <= 0.05 + 1e-12
                       for p in pieces)


def test_fan_pieces_chain():
    pieces = fan_partition(1, -0.37, LogState(0.4, -0.2), 0.1)
    for a, b in zip(pieces, pieces[1:]):
        assert a.right_state == b.left_state


def test_total_strength_triangle_inequality():
    rng = random.Random(37)
    for _ in range(1000):
        u1, u2, u3 = (random_state(rng) for _ in range(3))
        assert D_func(u1, u3) <= D_func(u1, u2) + D_func(u2, u3) + 1e-12


def test_total_strength_zero_iff_equal():
    u = LogState(0.3, -0.2)
    assert D_func(u, u) < 1e-13
