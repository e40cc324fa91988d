import math

import pytest
from hypothesis import given, strategies as st

from isofront.errors import DomainError
from isofront.states import (
    LogState,
    State,
    W_deriv,
    W_func,
    eigenvalues,
    eigenvalues_log,
    entropy,
    entropy_flux,
    flux,
    from_log,
    grad_entropy,
    rel_entropy,
    rel_flux,
    to_log,
)

finite = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)


def test_state_rejects_vacuum_and_nonfinite():
    with pytest.raises(DomainError):
        State(tau=0.0, v=1.0)
    with pytest.raises(DomainError):
        State(tau=-2.0, v=0.0)
    with pytest.raises(DomainError):
        State(tau=math.nan, v=0.0)


def test_log_transform_values():
    s = State(tau=2.0, v=1.5)
    ls = to_log(s)
    assert ls.w == -math.log(2.0)
    assert ls.v == 1.5


@given(w=finite, v=finite)
def test_log_round_trip(w, v):
    ls = LogState(w=w, v=v)
    back = to_log(from_log(ls))
    assert abs(back.w - w) < 1e-12
    assert back.v == v


def test_strength_function_values():
    assert W_func(-1.3) == -1.3
    assert W_func(0.0) == 0.0
    assert math.isclose(W_func(2.0), 2.0 * math.sinh(1.0), rel_tol=1e-15)
    assert W_deriv(-0.5) == 1.0
    assert W_deriv(0.0) == 1.0
    assert math.isclose(W_deriv(1.0), math.cosh(0.5), rel_tol=1e-15)


@given(a=finite, b=finite)
def test_strength_function_monotone(a, b):
    if a < b:
        assert W_func(a) < W_func(b)


def test_eigenvalues_and_flux():
    s = State(tau=0.5, v=3.0)
    assert eigenvalues(s) == (-2.0, 2.0)
    lam1, lam2 = eigenvalues_log(to_log(s))
    assert math.isclose(lam1, -2.0) and math.isclose(lam2, 2.0)
    assert flux(s) == (-3.0, 2.0)


def test_entropy_values():
    s = State(tau=2.0, v=2.0)
    assert entropy(s) == 2.0 - math.log(2.0)
    assert entropy_flux(s) == 1.0
    assert grad_entropy(s) == (-0.5, 2.0)


def test_rel_entropy_example():
    val = rel_entropy(State(2.0, 0.0), State(1.0, 0.0))
    assert math.isclose(val, 1.0 - math.log(2.0), rel_tol=1e-12)


@given(ta=st.floats(0.2, 5.0), va=finite, tb=st.floats(0.2, 5.0), vb=finite)
def test_rel_entropy_nonnegative(ta, va, tb, vb):
    a, b = State(ta, va), State(tb, vb)
    assert rel_entropy(a, b) >= 0.0
    assert rel_entropy(a, a) == 0.0


@given(ta=st.floats(0.2, 5.0), va=finite, tb=st.floats(0.2, 5.0), vb=finite)
def test_rel_entropy_matches_defining_combination(ta, va, tb, vb):
    a, b = State(ta, va), State(tb, vb)
    gtau, gv = grad_entropy(b)
    naive = entropy(a) - entropy(b) - gtau * (ta - tb) - gv * (va - vb)
    assert abs(rel_entropy(a, b) - naive) < 1e-10


def test_rel_flux_example():
    assert math.isclose(rel_flux(State(2.0, 1.0), State(1.0, 0.0)), -0.5,
                        rel_tol=1e-12)


@given(ta=st.floats(0.2, 5.0), va=finite, tb=st.floats(0.2, 5.0), vb=finite)
def test_rel_flux_closed_form(ta, va, tb, vb):
    a, b = State(ta, va), State(tb, vb)
    closed = (va - vb) * (1.0 / ta - 1.0 / tb)
    assert abs(rel_flux(a, b) - closed) < 1e-10
