import math
import random

import pytest

from isofront.errors import ConsistencyError
from isofront.fronts import BIG, SMALL, SHOCK, RAREFACTION, Front, WaveLabel
from isofront.interactions import resolve_interaction
from isofront.params import SchemeParams
from isofront.riemann import apply_wave_curve, shock_speed
from isofront.states import LogState, eigenvalues_log
from isofront.weight import (
    WeightState,
    compute_budgets,
    eval_weight,
    update_weight,
    xi_multiplier,
)
from tests.test_interactions import chain_pair

PARAMS = SchemeParams(delta=0.2, epsilon=0.5, c0=1.0, c1=0.2)


def shock_front(fid, family, sigma, size, x0, left=None):
    if left is None:
        left = LogState(0.0, 0.0)
    right = apply_wave_curve(family, sigma, left)
    return Front(id=fid, label=WaveLabel(family, SHOCK, size), left=left,
                 right=right, x0=x0, t0=0.0,
                 speed=shock_speed(left, right, family), birth_time=0.0)


def raref_front(fid, family, sigma, x0):
    left = LogState(0.0, 0.0)
    right = apply_wave_curve(family, sigma, left)
    lam1, lam2 = eigenvalues_log(right)
    return Front(id=fid, label=WaveLabel(family, RAREFACTION), left=left,
                 right=right, x0=x0, t0=0.0,
                 speed=lam1 if family == 1 else lam2, birth_time=0.0)


def test_xi_multiplier_values():
    assert xi_multiplier(shock_front(1, 1, 0.1, SMALL, 0.0), PARAMS) \
        == pytest.approx(0.9, abs=1e-15)
    assert xi_multiplier(shock_front(2, 2, 0.3, BIG, 0.0), PARAMS) == 5.0
    assert xi_multiplier(shock_front(3, 1, 0.3, BIG, 0.0), PARAMS) == 0.2
    assert xi_multiplier(shock_front(4, 2, 0.1, SMALL, 0.0), PARAMS) \
        == pytest.approx(1.1, abs=1e-15)


def test_xi_multiplier_rejects_rarefactions():
    with pytest.raises(ConsistencyError):
        xi_multiplier(raref_front(1, 1, -0.1, 0.0), PARAMS)


def test_small_multipliers_confined():
    # c0 * sigma <= c0 * epsilon <= 1/2 keeps every small factor in (1/2, 3/2)
    rng = random.Random(3)
    for _ in range(200):
        fam = rng.choice((1, 2))
        sig = rng.uniform(1e-4, PARAMS.epsilon - 1e-9)
        m = xi_multiplier(shock_front(1, fam, sig, SMALL, 0.0), PARAMS)
        assert 0.5 < m < 1.5


def test_eval_weight_no_shocks():
    assert eval_weight(WeightState(), [], 0.0, PARAMS) == 1.0


def test_eval_weight_worked_example():
    fronts = [
        shock_front(1, 1, 0.1, SMALL, -1.0),
        shock_front(2, 2, 0.3, BIG, 1.0),
    ]
    ws = WeightState()
    assert eval_weight(ws, fronts, -2.0, PARAMS) == 1.0
    assert eval_weight(ws, fronts, 0.0, PARAMS) == pytest.approx(0.9)
    assert eval_weight(ws, fronts, 2.0, PARAMS) == pytest.approx(4.5)


def test_eval_weight_jump_ratios():
    fronts = [
        shock_front(1, 1, 0.35, BIG, -2.0),
        shock_front(2, 1, 0.2, SMALL, -1.0),
        shock_front(3, 2, 0.25, SMALL, 1.0),
        shock_front(4, 2, 0.6, BIG, 2.0),
    ]
    ws = WeightState(L=1, Q=0.9)
    eps = 1e-9
    for f in fronts:
        lo = eval_weight(ws, fronts, f.x0 - eps, PARAMS)
        hi = eval_weight(ws, fronts, f.x0 + eps, PARAMS)
        assert hi / lo == pytest.approx(xi_multiplier(f, PARAMS), rel=1e-12)


def test_update_weight_type_1():
    left, right = chain_pair(1, 0.7, 1, 0.6, sizeL=BIG, sizeR=BIG)
    out = resolve_interaction(left, right, PARAMS)
    ws = update_weight(WeightState(), out)
    assert ws.L == 1 and ws.Q == 1.0 and ws.factors == (1.0,)


def test_update_weight_type_2():
    left, right = chain_pair(1, 0.6, 1, 0.15, sizeL=BIG, sizeR=SMALL)
    out = resolve_interaction(left, right, PARAMS)
    ws = update_weight(WeightState(), out)
    assert ws.L == 0
    assert ws.Q == pytest.approx(0.85, abs=1e-12)


def test_update_weight_mirror_cases_leave_state():
    left, right = chain_pair(2, 0.6, 2, 0.7, sizeL=BIG, sizeR=BIG)
    out = resolve_interaction(left, right, PARAMS)
    ws = update_weight(WeightState(), out)
    assert ws.L == 0 and ws.Q == 1.0


def test_update_weight_recomputes_product():
    left, right = chain_pair(1, 0.6, 1, 0.15, sizeL=BIG, sizeR=SMALL)
    out = resolve_interaction(left, right, PARAMS)
    ws = WeightState()
    for i in range(1, 2001):
        ws = update_weight(ws, out, event_index=i)
    assert ws.Q == pytest.approx(math.prod(ws.factors), rel=1e-9)


def test_compute_budgets_constant_data():
    bc = compute_budgets(0.0, 0.0, PARAMS)
    assert bc.K0 == 0.0 and bc.Lambda == 0
    assert bc.k == 1.0
    assert bc.a_min == 1.0 and bc.a_max == 1.0


def test_compute_budgets_worked_example():
    p = SchemeParams(delta=0.05, epsilon=0.5, c0=1.0, c1=0.2)
    bc = compute_budgets(1.0, 0.0, p)
    assert bc.K1 == 1.0
    assert bc.C3 == pytest.approx(math.cosh(1.0), rel=1e-15)
    assert bc.K0 == pytest.approx(2.0 * (math.cosh(1.0) + 1.0), rel=1e-15)
    assert bc.Lambda == 30
    assert bc.a_max == pytest.approx(math.e / 0.2 ** 4, rel=1e-12)
    exponent = -4.0 - 6.0 * (bc.K0 + 1.0) - 10.0 * math.cosh(1.0)
    assert bc.k == pytest.approx(math.exp(exponent), rel=1e-12)
    assert bc.a_min == pytest.approx(0.2 ** 34 * bc.k * math.exp(-2.0), rel=1e-12)
    assert 0.0 < bc.a_min < 1.0 < bc.a_max


def test_product_bounds_lemma():
    # for factors a_i < 1/2 with sum <= K: prod(1-a_i) >= e^{-2K} and
    # prod(1+a_i) <= e^{K}
    rng = random.Random(17)
    for _ in range(300):
        n = rng.randint(1, 40)
        factors = [rng.uniform(0.0, 0.49) for _ in range(n)]
        K = sum(factors)
        lower = math.prod(1.0 - a for a in factors)
        upper = math.prod(1.0 + a for a in factors)
        assert lower >= math.exp(-2.0 * K) - 1e-12
        assert upper <= math.exp(K) + 1e-12
