"""Exact Riemann solution in (w, v): wave curves, intermediate state,
shock speeds, rarefaction fan partitioning.

Strengths are signed and measured in w-units: sigma > 0 is a shock,
sigma < 0 a rarefaction.  The i-wave curve through a left state is

    T_i(sigma)(w, v) = (w + (-1)^(i-1) sigma, v - W(sigma)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConsistencyError, SolverError
from .states import LogState, W_deriv, W_func, eigenvalues_log

#: Waves weaker than this are dropped and produce no front.
ZERO_STRENGTH = 1e-14

_ROOT_TOL = 1e-13
_MAX_ITER = 200


@dataclass(frozen=True)
class WaveDecomposition:
    """Solution of one Riemann problem: strengths and intermediate state."""

    sigma1: float
    sigma2: float
    w_m: float
    v_m: float


@dataclass(frozen=True)
class FanPiece:
    """One piece of a discretized rarefaction fan."""

    left_state: LogState
    right_state: LogState
    speed: float


def apply_wave_curve(family: int, sigma: float, left: LogState) -> LogState:
    """Right state reached from `left` along the i-wave curve at `sigma`."""
    sign = 1.0 if family == 1 else -1.0
    return LogState(w=left.w + sign * sigma, v=left.v - W_func(sigma))


def _residual(m: float, ul: LogState, ur: LogState) -> float:
    return W_func(m - ul.w) + W_func(m - ur.w) - (ul.v - ur.v)


def intermediate_bracket(ul: LogState, ur: LogState) -> tuple[float, float]:
    """Analytically safe bracket for the intermediate-state root."""
    dv = abs(ul.v - ur.v)
    return min(ul.w, ur.w) - dv, max(ul.w, ur.w) + dv


def solve_w_m_bisection(ul: LogState, ur: LogState, tol: float = 1e-13) -> float:
    """Plain bisection oracle for the intermediate w; independent of the
    Newton path used by `solve_intermediate`."""
    lo, hi = intermediate_bracket(ul, ur)
    if _residual(lo, ul, ur) > 0.0 or _residual(hi, ul, ur) < 0.0:
        raise SolverError("bisection bracket does not straddle the root")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if _residual(mid, ul, ur) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def solve_intermediate(ul: LogState, ur: LogState) -> WaveDecomposition:
    """Intermediate state of the Riemann problem (ul, ur).

    Solves v_l - v_r = W(m - w_l) + W(m - w_r) for m with a
    bisection-safeguarded Newton iteration; the map is strictly
    increasing with slope >= 2, so the bracket is never lost.
    """
    lo, hi = intermediate_bracket(ul, ur)
    m = 0.5 * (lo + hi)
    res = _residual(m, ul, ur)
    for _ in range(_MAX_ITER):
        if abs(res) <= _ROOT_TOL:
            break
        slope = W_deriv(m - ul.w) + W_deriv(m - ur.w)
        step = res / slope
        candidate = m - step
        if not (lo < candidate < hi):
            candidate = 0.5 * (lo + hi)
        new_res = _residual(candidate, ul, ur)
        if new_res < 0.0:
            lo = max(lo, candidate)
        else:
            hi = min(hi, candidate)
        if candidate == m:
            break
        m, res = candidate, new_res
    else:
        raise SolverError(
            f"intermediate-state iteration stalled, residual {res:.3e}", residual=res
        )
    if abs(res) > 1e-12:
        raise SolverError(
            f"intermediate-state residual {res:.3e} above tolerance", residual=res
        )
    sigma1 = m - ul.w
    sigma2 = m - ur.w
    return WaveDecomposition(
        sigma1=sigma1, sigma2=sigma2, w_m=m, v_m=ul.v - W_func(sigma1)
    )


def shock_speed(ul: LogState, ur: LogState, family: int) -> float:
    """Rankine-Hugoniot speed of an admissible shock: -+ exp((w_l+w_r)/2).

    Satisfies the Lax inequalities strictly for sigma > 0.
    """
    sigma = (ur.w - ul.w) if family == 1 else (ul.w - ur.w)
    if sigma <= 0.0:
        raise ConsistencyError(
            f"shock_speed called on a non-shock pair (family {family}, sigma {sigma})"
        )
    mag = math.exp(0.5 * (ul.w + ur.w))
    return -mag if family == 1 else mag


def fan_partition(
    family: int, sigma: float, left: LogState, delta: float
) -> list[FanPiece]:
    """Split an i-rarefaction of strength sigma < 0 into ceil(|sigma|/delta)
    equal pieces; each piece travels at the characteristic speed of its
    right state, so speeds increase strictly across the fan."""
    if sigma >= 0.0:
        raise ConsistencyError(f"fan_partition needs sigma < 0, got {sigma}")
    if delta <= 0.0:
        raise ConsistencyError(f"fan_partition needs delta > 0, got {delta}")
    p = math.ceil(-sigma / delta)
    pieces = []
    prev = left
    for l in range(1, p + 1):
        cur = apply_wave_curve(family, sigma * l / p, left)
        lam1, lam2 = eigenvalues_log(cur)
        pieces.append(
            FanPiece(left_state=prev, right_state=cur, speed=lam1 if family == 1 else lam2)
        )
        prev = cur
    return pieces


def D_func(ul: LogState, ur: LogState) -> float:
    """Total wave strength |sigma_1| + |sigma_2| of the Riemann solution."""
    dec = solve_intermediate(ul, ur)
    return abs(dec.sigma1) + abs(dec.sigma2)
