"""Post-processing of runs: functionals, entropy admissibility, budget
auditing, the weighted relative-entropy comparison, and the mass-to-
physical coordinate transform.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

from .errors import ConfigError, ConsistencyError
from .engine import RunRecord, Snapshot
from .engine import functionals as _front_functionals
from .fronts import SHOCK, Front
from .params import SchemeParams
from .states import LogState, entropy, entropy_flux, from_log, rel_entropy
from .weight import WeightState, xi_multiplier


def functionals(snapshot: Snapshot) -> tuple[float, float]:
    """(S, B): summed small-shock strength and total w-variation."""
    return _front_functionals(snapshot.fronts)


def entropy_admissible(front: Front, tol: float = 1e-12) -> bool:
    """True iff the discontinuity dissipates entropy:
    -speed*[eta] + [q] <= tol across the front."""
    if front.kind != SHOCK:
        raise ConsistencyError("entropy_admissible applies to shocks")
    ul, ur = from_log(front.left), from_log(front.right)
    diss = -front.speed * (entropy(ur) - entropy(ul)) + (
        entropy_flux(ur) - entropy_flux(ul)
    )
    return diss <= tol


@dataclass(frozen=True)
class BudgetCheck:
    name: str
    observed: float
    bound: float
    passed: bool


@dataclass(frozen=True)
class BudgetReport:
    """Every counter of a completed run against its a-priori bound."""

    V: float
    checks: tuple[BudgetCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def by_name(self, name: str) -> BudgetCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def audit(run: RunRecord) -> BudgetReport:
    """Recompute all counters from the event log and compare with the
    bounds derived from V."""
    bc = run.budget_constants
    p = run.params
    eps, V, K0 = p.epsilon, bc.V, bc.K0

    counts: dict[str, int] = {}
    sum_plus = sum_minus = 0.0
    l_max = 0
    q_min = 1.0
    for ev in run.events:
        counts[ev.case_code] = counts.get(ev.case_code, 0) + 1
        sum_plus += max(ev.dS, 0.0)
        sum_minus += max(-ev.dS, 0.0)
        l_max = max(l_max, ev.L_after)
        q_min = min(q_min, ev.Q_after)

    a_lo, a_hi = run.a_range
    w_max = 0.0
    for snap in (run.initial_snapshot, run.final_snapshot, *run.snapshots):
        w_max = max(w_max, abs(snap.leftmost_state.w))
        for f in snap.fronts:
            w_max = max(w_max, abs(f.left.w), abs(f.right.w))

    def chk(name, observed, bound):
        return BudgetCheck(name=name, observed=observed, bound=bound,
                           passed=observed <= bound + 1e-9)

    checks = (
        chk("big_to_small", counts.get("3B", 0) + counts.get("8B", 0),
            math.ceil(V / eps)),
        chk("small_to_big", counts.get("4B", 0) + counts.get("9B", 0),
            math.ceil((K0 + V) / eps)),
        chk("head_on_big_merges", counts.get("1", 0),
            math.ceil(V / eps) + math.ceil((K0 + V) / eps)),
        chk("L_max", l_max, bc.Lambda),
        chk("sum_dS_plus", sum_plus, K0),
        chk("sum_dS_minus", sum_minus, K0 + V),
        BudgetCheck("Q_min", q_min, bc.k, q_min >= bc.k * (1.0 - 1e-12)),
        BudgetCheck("a_min", a_lo, bc.a_min, a_lo >= bc.a_min * (1.0 - 1e-9)),
        chk("a_max", a_hi, bc.a_max),
        chk("w_max", w_max, bc.K1),
    )
    return BudgetReport(V=V, checks=checks)


def weight_profile(snapshot: Snapshot, params: SchemeParams):
    """Weight regions of a snapshot: (positions, values)."""
    ws = snapshot.weight
    positions = snapshot.positions()
    a = params.c1 ** ws.L * ws.Q
    values = [a]
    for f in snapshot.fronts:
        if f.kind == SHOCK:
            a *= xi_multiplier(f, params)
        values.append(a)
    return positions, values


def weighted_rel_entropy(
    snap_u: Snapshot,
    snap_psi: Snapshot,
    params_psi: SchemeParams,
    cone: tuple[float, float],
) -> float:
    """Exact integral of a(x) * rel_entropy(u(x) | psi(x)) over the cone
    interval, with a taken from psi's weight state and shock list."""
    lo, hi = cone
    if hi <= lo:
        raise ConfigError(f"empty cone of information [{lo}, {hi}]")
    pu, su = snap_u.positions(), snap_u.states()
    pp, sp = snap_psi.positions(), snap_psi.states()
    pa, va = weight_profile(snap_psi, params_psi)
    edges = sorted({lo, hi, *(x for x in pu + pp if lo < x < hi)})
    total = 0.0
    for a, b in zip(edges, edges[1:]):
        m = 0.5 * (a + b)
        u = from_log(su[bisect.bisect_right(pu, m)])
        psi = from_log(sp[bisect.bisect_right(pp, m)])
        wgt = va[bisect.bisect_right(pa, m)]
        total += (b - a) * wgt * rel_entropy(u, psi)
    return total


def cone_interval(t: float, R: float, l: float) -> tuple[float, float]:
    """The interval [-R + l t, R - l t] untouched by the boundary."""
    return -R + l * t, R - l * t


@dataclass(frozen=True)
class EulerianSnapshot:
    """Physical-space profile: interval edges y and per-interval (rho, v)."""

    time: float
    ys: tuple[float, ...]
    rhos: tuple[float, ...]
    vs: tuple[float, ...]
    xs: tuple[float, ...]
    front_ids: tuple[int, ...]

    def __post_init__(self):
        if not (len(self.ys) == len(self.rhos) + 1 == len(self.vs) + 1
                == len(self.xs)):
            raise ConsistencyError("inconsistent Eulerian snapshot shape")
        if any(b <= a for a, b in zip(self.ys, self.ys[1:])):
            raise ConsistencyError("Eulerian edges must increase")

    def total_mass(self) -> float:
        return sum(r * (b - a) for r, a, b in
                   zip(self.rhos, self.ys, self.ys[1:]))


def to_eulerian(
    snapshot: Snapshot,
    y_anchor: float,
    x_window: tuple[float, float] | None = None,
) -> EulerianSnapshot:
    """Map the mass-coordinate profile to physical space: a mass interval
    of length dx with specific volume tau occupies physical length
    tau*dx, with density rho = 1/tau and the same velocity."""
    positions = snapshot.positions()
    states = snapshot.states()
    if x_window is None:
        if positions:
            x_window = (positions[0] - 1.0, positions[-1] + 1.0)
        else:
            x_window = (-1.0, 1.0)
    lo, hi = x_window
    if hi <= lo:
        raise ConfigError(f"empty window [{lo}, {hi}]")
    # coincident fronts (a fan just born at one interface) would give
    # zero-width intervals, so only strictly advancing breakpoints are kept
    xs, ids = [lo], []
    for f, x in zip(snapshot.fronts, positions):
        if lo < x < hi and x > xs[-1]:
            xs.append(x)
            ids.append(f.id)
    xs.append(hi)
    ys, rhos, vs = [y_anchor], [], []
    for a, b in zip(xs, xs[1:]):
        s = from_log(states[bisect.bisect_right(positions, 0.5 * (a + b))])
        if s.tau <= 0.0:
            raise ConfigError("vacuum state in Eulerian transform")
        ys.append(ys[-1] + s.tau * (b - a))
        rhos.append(s.rho)
        vs.append(s.v)
    return EulerianSnapshot(time=snapshot.time, ys=tuple(ys),
                            rhos=tuple(rhos), vs=tuple(vs), xs=tuple(xs),
                            front_ids=tuple(ids))


def eulerian_to_breakpoints(e: EulerianSnapshot) -> list[float]:
    """Round trip back to mass coordinates: dx = rho * dy."""
    xs = [e.xs[0]]
    for r, a, b in zip(e.rhos, e.ys, e.ys[1:]):
        xs.append(xs[-1] + r * (b - a))
    return xs


def eulerian_speed_bound(c_hat: float, C_hat: float, M_hat: float,
                         lam_hat: float) -> float:
    """Maximal physical-space front speed (2/c)(lambda + C*M) from the
    realized state box."""
    if c_hat <= 0.0:
        raise ConfigError("density floor must be positive")
    return 2.0 / c_hat * (lam_hat + C_hat * M_hat)


def realized_box(run: RunRecord) -> tuple[float, float, float, float]:
    """(c_hat, C_hat, M_hat, lam_hat) scanned over all recorded
    snapshots: density range, velocity bound, Lagrangian speed bound."""
    rho_lo, rho_hi, m_hat, lam_hat = math.inf, 0.0, 0.0, 0.0
    for snap in (run.initial_snapshot, run.final_snapshot, *run.snapshots):
        for s in snap.states():
            rho = math.exp(s.w)
            rho_lo, rho_hi = min(rho_lo, rho), max(rho_hi, rho)
            m_hat = max(m_hat, abs(s.v))
        for f in snap.fronts:
            lam_hat = max(lam_hat, abs(f.speed))
    if not math.isfinite(rho_lo):
        rho_lo = rho_hi = 1.0
    return rho_lo, rho_hi, m_hat, lam_hat


def eulerian_speed_check(
    e1: EulerianSnapshot, e2: EulerianSnapshot, max_speed: float
) -> bool:
    """True iff every discontinuity present in both snapshots (matched
    by front id) moved no faster than max_speed between the two times."""
    dt = e2.time - e1.time
    if dt <= 0.0:
        raise ConfigError("snapshots must be in increasing time order")
    y1 = dict(zip(e1.front_ids, e1.ys[1:-1]))
    y2 = dict(zip(e2.front_ids, e2.ys[1:-1]))
    for fid, ya in y1.items():
        if fid in y2:
            if abs(y2[fid] - ya) > max_speed * dt * (1.0 + 1e-9):
                return False
    return True
