"""The piecewise-constant weight a(t,x) = C1^L * Q * prod(xi_i) and its
update rules, plus the run-level budget constants derived from V.

Each shock carries a multiplier applied to everything on its right:
small 1-shocks 1 - C0*sigma, small 2-shocks 1 + C0*sigma, big 1-shocks
C1, big 2-shocks 1/C1.  L counts the interactions that create or merge
big shocks head-on (cases 1, 3B, 9B); Q collects the small-shock
numbers of cases 2, 3A, 4A, 5A, 5B.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .errors import ConsistencyError
from .fronts import BIG, SHOCK, Front
from .interactions import InteractionOutcome, L_CASES
from .params import SchemeParams

#: Recompute Q from its audit list this often to bound rounding drift.
Q_RECHECK_EVERY = 1000
_Q_RECHECK_RTOL = 1e-9


@dataclass(frozen=True)
class WeightState:
    """Global part of the weight: the exponent L and the product Q.

    `factors` is the audit list of every number multiplied into Q, kept
    so the product can be recomputed from scratch periodically.
    """

    L: int = 0
    Q: float = 1.0
    factors: tuple[float, ...] = ()

    def __post_init__(self):
        if self.L < 0:
            raise ConsistencyError(f"negative L {self.L}")
        if not 0.0 < self.Q <= 1.0:
            raise ConsistencyError(f"Q {self.Q} outside (0, 1]")


def xi_multiplier(front: Front, params: SchemeParams) -> float:
    """Weight multiplier a shock applies to the region on its right."""
    if front.kind != SHOCK:
        raise ConsistencyError("xi_multiplier is defined for shocks only")
    if front.size == BIG:
        return params.c1 if front.family == 1 else 1.0 / params.c1
    s = params.c0 * front.sigma
    return 1.0 - s if front.family == 1 else 1.0 + s


def eval_weight(ws: WeightState, fronts, x: float, params: SchemeParams,
                t: float | None = None) -> float:
    """a(x) = C1^L * Q * product of multipliers of shocks strictly left
    of x.  Positions are taken at time t when given, else at each
    front's own anchor time."""
    a = params.c1 ** ws.L * ws.Q
    for f in fronts:
        pos = f.x0 if t is None else f.position(t)
        if f.kind == SHOCK and pos < x:
            a *= xi_multiplier(f, params)
    return a


def weight_breakpoints(ws: WeightState, fronts, params: SchemeParams,
                       t: float | None = None) -> list[tuple[float, float]]:
    """(position, weight-on-the-left) for each front, in order; the
    weight left of the first front is C1^L * Q."""
    a = params.c1 ** ws.L * ws.Q
    out = []
    for f in fronts:
        pos = f.x0 if t is None else f.position(t)
        out.append((pos, a))
        if f.kind == SHOCK:
            a *= xi_multiplier(f, params)
    return out


def update_weight(ws: WeightState, outcome: InteractionOutcome,
                  event_index: int | None = None) -> WeightState:
    """Weight state after one interaction: L += dL, Q *= q_factor."""
    qf = outcome.q_factor
    if not 0.0 < qf <= 1.0:
        raise ConsistencyError(f"q-factor {qf} outside (0, 1]")
    new = WeightState(L=ws.L + outcome.dL, Q=ws.Q * qf,
                      factors=ws.factors + (qf,))
    if event_index is not None and event_index % Q_RECHECK_EVERY == 0:
        q_exact = math.prod(new.factors)
        if abs(new.Q - q_exact) > _Q_RECHECK_RTOL * q_exact:
            raise ConsistencyError(
                f"running Q {new.Q} drifted from audit product {q_exact}"
            )
        new = replace(new, Q=q_exact)
    return new


@dataclass(frozen=True)
class BudgetConstants:
    """All a-priori bounds of one run, derived from the measured initial
    variation V and the leftmost state."""

    V: float
    K1: float
    C3: float
    K0: float
    Lambda: int
    k: float
    a_min: float
    a_max: float

    def __post_init__(self):
        for name in ("V", "K1", "C3", "K0", "k", "a_min", "a_max"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val >= 0.0):
                raise ConsistencyError(f"budget constant {name} = {val}")


def compute_budgets(V: float, leftmost_w: float, params: SchemeParams) -> BudgetConstants:
    """Evaluate every budget formula for a run of initial variation V."""
    if V < 0.0:
        raise ConsistencyError(f"negative initial variation {V}")
    eps, c0, c1 = params.epsilon, params.c0, params.c1
    k1 = abs(leftmost_w) + V
    c3 = math.cosh(k1)
    k0 = 2.0 * (c3 + 1.0) * V
    lam = 2 * (math.ceil((k0 + V) / eps) + math.ceil(V / eps))
    k = math.exp(-4.0 * c0 * V - 6.0 * c0 * (k0 + V) - 10.0 * c0 * c3 * V)
    n_big = math.ceil(2.0 * V / eps)
    a_min = c1 ** (lam + n_big) * k * math.exp(-2.0 * V)
    a_max = math.exp(V) / c1 ** n_big
    return BudgetConstants(V=V, K1=k1, C3=c3, K0=k0, Lambda=lam,
                           k=k, a_min=a_min, a_max=a_max)
