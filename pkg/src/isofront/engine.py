"""Event-driven front tracking: initial-data approximation, collision
scheduling, interaction execution, and run recording.

Between events every front moves at constant speed, so the next
collision among adjacent pairs is exact kinematics.  Events are kept in
a priority queue keyed by (time, position) with lazy invalidation:
entries whose pair is no longer adjacent are discarded on pop, and
simultaneous collisions are serialized leftmost-first.
"""
from __future__ import annotations

import bisect
import heapq
import math
import time as _time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .errors import BudgetError, ConfigError, ConsistencyError
from .fronts import BIG, RAREFACTION, SHOCK, SMALL, Front, WaveLabel
from .interactions import OutWave, SpeedPolicy, resolve_interaction
from .params import SchemeParams
from .riemann import ZERO_STRENGTH, fan_partition, shock_speed, solve_intermediate
from .states import LogState, State, eigenvalues_log, from_log, to_log
from .weight import (
    BudgetConstants,
    WeightState,
    compute_budgets,
    update_weight,
    weight_breakpoints,
    xi_multiplier,
)

_TIME_TIE = 1e-13
_MAX_EVENTS = 2_000_000


@dataclass(frozen=True)
class PiecewiseConstant:
    """Piecewise-constant initial profile, constant outside [xs[0], xs[-1]].

    `states` has one more entry than `xs`; states[j] holds on
    (xs[j-1], xs[j]).
    """

    xs: tuple[float, ...]
    states: tuple[State, ...]

    def __post_init__(self):
        if len(self.states) != len(self.xs) + 1:
            raise ConfigError("need len(states) == len(xs) + 1")
        if any(b <= a for a, b in zip(self.xs, self.xs[1:])):
            raise ConfigError("breakpoints must be strictly increasing")

    def at(self, x: float) -> State:
        return self.states[bisect.bisect_right(self.xs, x)]

    def average(self, a: float, b: float) -> State:
        """Cell average of (tau, v) over [a, b]."""
        edges = [a] + [x for x in self.xs if a < x < b] + [b]
        tau = v = 0.0
        for lo, hi in zip(edges, edges[1:]):
            s = self.at(0.5 * (lo + hi))
            tau += (hi - lo) * s.tau
            v += (hi - lo) * s.v
        return State(tau=tau / (b - a), v=v / (b - a))

    def total_variation(self) -> float:
        return sum(
            abs(b.tau - a.tau) + abs(b.v - a.v)
            for a, b in zip(self.states, self.states[1:])
        )

    def min_tau(self) -> float:
        return min(s.tau for s in self.states)


@dataclass(frozen=True)
class Snapshot:
    """The piecewise-constant profile at one instant."""

    time: float
    fronts: tuple[Front, ...]
    leftmost_state: LogState
    weight: WeightState = field(default_factory=WeightState)

    def states(self) -> list[LogState]:
        return [self.leftmost_state] + [f.right for f in self.fronts]

    def positions(self) -> list[float]:
        return [f.position(self.time) for f in self.fronts]


@dataclass(frozen=True)
class InteractionEvent:
    """One executed collision, as recorded in the event log."""

    index: int
    t: float
    x: float
    case_code: str
    in_ids: tuple[int, int]
    out_ids: tuple[int, ...]
    dS: float
    dB: float
    dL: int
    q_factor: float
    L_after: int
    Q_after: float


@dataclass(frozen=True)
class RunRecord:
    """Everything one run produced."""

    params: SchemeParams
    budget_constants: BudgetConstants
    initial_snapshot: Snapshot
    final_snapshot: Snapshot
    snapshots: tuple[Snapshot, ...]
    events: tuple[InteractionEvent, ...]
    series: tuple[tuple[float, float, float, int, float], ...]
    case_counts: dict
    multi_raref_counts: dict
    a_range: tuple[float, float]
    wall_time: float


def approximate_initial_data(u0: PiecewiseConstant, params: SchemeParams) -> Snapshot:
    """Cell-average u0 on a mesh of width ~delta over [-R, R], then solve
    every interface Riemann problem; the resulting fronts are the t=0+
    profile.  Shocks start big iff sigma >= epsilon."""
    if u0.min_tau() < params.beta:
        raise ConfigError(
            f"initial data reaches tau={u0.min_tau()} below the floor {params.beta}"
        )
    R = params.domain_radius
    n = max(1, math.ceil(2.0 * R / params.delta))
    h = 2.0 * R / n
    cells = [u0.average(-R + j * h, -R + (j + 1) * h) for j in range(n)]
    left_ext = u0.at(-R - 1.0)
    right_ext = u0.at(R + 1.0)
    levels = [left_ext] + cells + [right_ext]
    interfaces = [-R + j * h for j in range(n + 1)]

    fronts: list[Front] = []
    next_id = 0
    for x, (sl, sr) in zip(interfaces, zip(levels, levels[1:])):
        for blue in riemann_fronts(to_log(sl), to_log(sr), params):
            fronts.append(
                Front(id=next_id, label=blue.label, left=blue.left,
                      right=blue.right, x0=x, t0=0.0, speed=blue.speed,
                      birth_time=0.0)
            )
            next_id += 1
    return Snapshot(time=0.0, fronts=tuple(fronts), leftmost_state=to_log(left_ext))


def riemann_fronts(
    ul: LogState, ur: LogState, params: SchemeParams,
    speed_policy: Optional[SpeedPolicy] = None,
) -> list[OutWave]:
    """Wave blueprint of a single Riemann problem (no interaction
    bookkeeping; initial shocks are big iff sigma >= epsilon)."""
    if ul == ur:
        return []
    dec = solve_intermediate(ul, ur)
    mid = LogState(w=dec.w_m, v=dec.v_m)
    out: list[OutWave] = []
    for family, sigma, sl, sr in ((1, dec.sigma1, ul, mid), (2, dec.sigma2, mid, ur)):
        if sigma > ZERO_STRENGTH:
            label = WaveLabel(family, SHOCK, BIG if sigma >= params.epsilon else SMALL)
            if speed_policy is None:
                speed = shock_speed(sl, sr, family)
            else:
                speed = speed_policy(family, sl, sr)
            out.append(OutWave(label=label, left=sl, right=sr, speed=speed))
        elif sigma < -ZERO_STRENGTH:
            pieces = fan_partition(family, sigma, sl, params.delta)
            for i, p in enumerate(pieces):
                pr = sr if i == len(pieces) - 1 else p.right_state
                lam1, lam2 = eigenvalues_log(pr)
                out.append(OutWave(label=WaveLabel(family, RAREFACTION),
                                   left=p.left_state, right=pr,
                                   speed=lam1 if family == 1 else lam2))
    return out


def _collision_time(left: Front, right: Front, now: float) -> Optional[tuple[float, float]]:
    rel = left.speed - right.speed
    if rel <= 0.0:
        return None
    gap = right.position(now) - left.position(now)
    if gap < -1e-9:
        raise ConsistencyError(
            f"fronts {left.id},{right.id} already crossed (gap {gap})"
        )
    dt = max(gap, 0.0) / rel
    t = now + dt
    return t, left.position(t)


def next_collision(snapshot: Snapshot, t_end: float = math.inf):
    """Earliest future adjacent-pair crossing, or None.

    Ties within 1e-13 go to the leftmost pair.
    """
    best = None
    for l, r in zip(snapshot.fronts, snapshot.fronts[1:]):
        hit = _collision_time(l, r, snapshot.time)
        if hit is None or hit[0] > t_end:
            continue
        t, x = hit
        if best is None or t < best[0] - _TIME_TIE or (
            abs(t - best[0]) <= _TIME_TIE and x < best[1]
        ):
            best = (t, x, l.id, r.id)
    if best is None:
        return None
    return best[0], best[2], best[3]


def evaluate(snapshot: Snapshot, x: float) -> LogState:
    """Piecewise-constant lookup of the profile at position x."""
    positions = snapshot.positions()
    return snapshot.states()[bisect.bisect_right(positions, x)]


def _breaklist(snapshot: Snapshot):
    return snapshot.positions(), snapshot.states()


def l1_distance(s1: Snapshot, s2: Snapshot, window: tuple[float, float]) -> float:
    """Exact L1 distance in (tau, v) between two profiles on a window."""
    a, b = window
    if b <= a:
        return 0.0
    p1, v1 = _breaklist(s1)
    p2, v2 = _breaklist(s2)
    edges = sorted({a, b, *(x for x in p1 + p2 if a < x < b)})
    total = 0.0
    for lo, hi in zip(edges, edges[1:]):
        m = 0.5 * (lo + hi)
        u = from_log(v1[bisect.bisect_right(p1, m)])
        w = from_log(v2[bisect.bisect_right(p2, m)])
        total += (hi - lo) * (abs(u.tau - w.tau) + abs(u.v - w.v))
    return total


def snapshot_variation(snapshot: Snapshot) -> float:
    """Total variation of the profile in (tau, v)."""
    sts = [from_log(s) for s in snapshot.states()]
    return sum(
        abs(b.tau - a.tau) + abs(b.v - a.v) for a, b in zip(sts, sts[1:])
    )


def functionals(fronts: Iterable[Front]) -> tuple[float, float]:
    """(S, B): total small-shock strength and total w-variation."""
    S = B = 0.0
    for f in fronts:
        s = f.sigma
        B += abs(s)
        if f.kind == SHOCK and f.size == SMALL:
            S += s
    return S, B


class _FrontList:
    """Doubly-linked ordered front list with id lookup."""

    def __init__(self, fronts: Sequence[Front]):
        self.fronts = {f.id: f for f in fronts}
        ids = [f.id for f in fronts]
        self.prv = {}
        self.nxt = {}
        for i, fid in enumerate(ids):
            self.prv[fid] = ids[i - 1] if i > 0 else None
            self.nxt[fid] = ids[i + 1] if i + 1 < len(ids) else None
        self.head = ids[0] if ids else None
        self.next_id = (max(ids) + 1) if ids else 0

    def __len__(self):
        return len(self.fronts)

    def ordered(self) -> list[Front]:
        out = []
        fid = self.head
        while fid is not None:
            out.append(self.fronts[fid])
            fid = self.nxt[fid]
        return out

    def replace_pair(self, lid: int, rid: int, new: Sequence[Front]) -> None:
        before = self.prv[lid]
        after = self.nxt[rid]
        for fid in (lid, rid):
            del self.fronts[fid], self.prv[fid], self.nxt[fid]
        ids = [f.id for f in new]
        for f in new:
            self.fronts[f.id] = f
        chain = [before] + ids + [after]
        for a, b in zip(chain, chain[1:]):
            if a is not None:
                self.nxt[a] = b
            if b is not None:
                self.prv[b] = a
        if before is None:
            self.head = ids[0] if ids else after


def _region_values(ws: WeightState, fronts: Sequence[Front],
                   params: SchemeParams, t: float):
    """Shock positions (sorted) and the weight value on each region
    between them; values[j] holds left of positions[j]."""
    pairs = sorted(
        (f.position(t), xi_multiplier(f, params))
        for f in fronts if f.kind == SHOCK
    )
    positions = [p for p, _ in pairs]
    values = [params.c1 ** ws.L * ws.Q]
    for _, m in pairs:
        values.append(values[-1] * m)
    return positions, values


def _value_at(positions, values, x: float) -> float:
    return values[bisect.bisect_left(positions, x)]


def run(
    params: SchemeParams,
    u0: PiecewiseConstant,
    snapshot_times: Sequence[float] = (),
    speed_policy: Optional[SpeedPolicy] = None,
) -> RunRecord:
    """Execute the front-tracking scheme from t=0 to t_end."""
    t_start_wall = _time.perf_counter()
    snap0 = approximate_initial_data(u0, params)
    for f in snap0.fronts:
        f.validate()
    S, B = functionals(snap0.fronts)
    budgets = compute_budgets(B, snap0.leftmost_state.w, params)
    ws = WeightState()
    fl = _FrontList(snap0.fronts)
    leftmost = snap0.leftmost_state

    events: list[InteractionEvent] = []
    series = [(0.0, S, B, 0, 1.0)]
    case_counts: dict[str, int] = {}
    multi_raref: dict[str, int] = {}
    sum_plus = sum_minus = 0.0
    a_lo = a_hi = params.c1 ** 0 * 1.0
    if snap0.fronts:
        _, vals0 = _region_values(ws, fl.ordered(), params, 0.0)
        a_lo, a_hi = min(vals0), max(vals0)

    want_times = sorted(t for t in snapshot_times if 0.0 <= t <= params.t_end)
    taken: list[Snapshot] = []

    heap: list[tuple[float, float, int, int]] = []

    def schedule(lid: Optional[int], rid: Optional[int], now: float):
        if lid is None or rid is None:
            return
        hit = _collision_time(fl.fronts[lid], fl.fronts[rid], now)
        if hit is None or hit[0] > params.t_end:
            return
        heapq.heappush(heap, (hit[0], hit[1], lid, rid))

    ordered0 = fl.ordered()
    for l, r in zip(ordered0, ordered0[1:]):
        schedule(l.id, r.id, 0.0)

    def make_snapshot(t: float) -> Snapshot:
        fr = tuple(f.at(t) for f in fl.ordered())
        return Snapshot(time=t, fronts=fr, leftmost_state=leftmost, weight=ws)

    def emit_snapshots_before(t: float):
        while want_times and want_times[0] < t:
            taken.append(make_snapshot(want_times.pop(0)))

    now = 0.0
    n_events = 0
    while heap:
        te, xe, lid, rid = heapq.heappop(heap)
        if lid not in fl.fronts or rid not in fl.fronts or fl.nxt[lid] != rid:
            continue
        hit = _collision_time(fl.fronts[lid], fl.fronts[rid], now)
        if hit is None or abs(hit[0] - te) > 1e-9 * (1.0 + abs(te)):
            continue
        emit_snapshots_before(te)
        left = fl.fronts[lid].at(te)
        right = fl.fronts[rid].at(te)
        xe = 0.5 * (left.x0 + right.x0)

        outcome = resolve_interaction(left, right, params, speed_policy)
        new_fronts = []
        out_ids = []
        for ow in outcome.outgoing:
            f = Front(id=fl.next_id, label=ow.label, left=ow.left,
                      right=ow.right, x0=xe, t0=te, speed=ow.speed,
                      birth_time=te)
            fl.next_id += 1
            f.validate()
            new_fronts.append(f)
            out_ids.append(f.id)

        check = params.check_weights
        full_check = check and params.full_weight_check
        if full_check:
            pre_pos, pre_val = _region_values(ws, fl.ordered(), params, te)

        fl.replace_pair(lid, rid, new_fronts)
        ws = update_weight(ws, outcome, event_index=n_events + 1)
        S += outcome.dS
        B += outcome.dB
        sum_plus += max(outcome.dS, 0.0)
        sum_minus += max(-outcome.dS, 0.0)
        code = outcome.case_code
        case_counts[code] = case_counts.get(code, 0) + 1
        n_raref = sum(1 for f in new_fronts if f.kind == RAREFACTION)
        if code in ("2", "7", "4A", "9A") and n_raref > 1:
            multi_raref[code] = multi_raref.get(code, 0) + 1

        n_events += 1
        ev = InteractionEvent(
            index=n_events, t=te, x=xe, case_code=code,
            in_ids=(lid, rid), out_ids=tuple(out_ids),
            dS=outcome.dS, dB=outcome.dB, dL=outcome.dL,
            q_factor=outcome.q_factor, L_after=ws.L, Q_after=ws.Q,
        )
        events.append(ev)
        series.append((te, S, B, ws.L, ws.Q))

        if check and not full_check:
            # equivalent pointwise test: every nonempty region lies
            # entirely left or entirely right of the collision point, so
            # a(t+,.)/a(t-,.) takes just two values there
            xi_in = 1.0
            for f in (left, right):
                if f.kind == SHOCK:
                    xi_in *= xi_multiplier(f, params)
            xi_out = 1.0
            for f in new_fronts:
                if f.kind == SHOCK:
                    xi_out *= xi_multiplier(f, params)
            fac_left = params.c1 ** outcome.dL * outcome.q_factor
            fac_right = fac_left * xi_out / xi_in
            if fac_left > 1.0 + params.tol_monotone or \
                    fac_right > 1.0 + params.tol_monotone:
                raise ConsistencyError(
                    f"weight increased at event {n_events} "
                    f"(case {code}: ratios {fac_left}, {fac_right})"
                )
            if n_events % 25 == 1 or not heap:
                _, vals = _region_values(ws, fl.ordered(), params, te)
                a_lo = min(a_lo, min(vals))
                a_hi = max(a_hi, max(vals))
        if full_check:
            post_pos, post_val = _region_values(ws, fl.ordered(), params, te)
            pts = sorted(set(pre_pos) | set(post_pos))
            if pts:
                # regions narrower than 1e-9 are the collision point itself
                mids = [pts[0] - 1.0] + [
                    0.5 * (a + b) for a, b in zip(pts, pts[1:]) if b - a > 1e-9
                ] + [pts[-1] + 1.0]
            else:
                mids = [0.0]
            for x in mids:
                a_new = _value_at(post_pos, post_val, x)
                a_old = _value_at(pre_pos, pre_val, x)
                if a_new > a_old + params.tol_monotone:
                    raise ConsistencyError(
                        f"weight increased at event {n_events}, x={x}: "
                        f"{a_old} -> {a_new} (case {code})"
                    )
                a_lo = min(a_lo, a_new)
                a_hi = max(a_hi, a_new)

        _enforce_budgets(budgets, params, ws, sum_plus, sum_minus,
                         case_counts, multi_raref, new_fronts, a_lo, a_hi)

        if n_events % params.chain_check_every == 0:
            _check_chaining(fl.ordered(), te)
        if n_events >= _MAX_EVENTS:
            raise BudgetError(f"event count exceeded the hard cap {_MAX_EVENTS}")

        now = te
        first, last = new_fronts[0].id if new_fronts else None, \
            new_fronts[-1].id if new_fronts else None
        prev_id = fl.prv[first] if first is not None else None
        next_id = fl.nxt[last] if last is not None else None
        if first is None:
            # both incoming fronts vanished; the outer pair became adjacent
            olist = fl.ordered()
            for l, r in zip(olist, olist[1:]):
                schedule(l.id, r.id, now)
        else:
            schedule(prev_id, first, now)
            for a, b in zip(new_fronts, new_fronts[1:]):
                schedule(a.id, b.id, now)
            schedule(last, next_id, now)

    emit_snapshots_before(math.nextafter(params.t_end, math.inf))
    while want_times:
        taken.append(make_snapshot(want_times.pop(0)))
    final = make_snapshot(params.t_end)
    _check_chaining(final.fronts, params.t_end)

    Sf, Bf = functionals(final.fronts)
    if abs(Sf - S) > 1e-9 or abs(Bf - B) > 1e-9:
        raise ConsistencyError(
            f"functional drift: running (S={S}, B={B}) vs recount (S={Sf}, B={Bf})"
        )
    for f in final.fronts:
        if abs(f.left.w) > budgets.K1 + 1e-9 or abs(f.right.w) > budgets.K1 + 1e-9:
            raise BudgetError(f"state |w| exceeds K1={budgets.K1} on front {f.id}")

    return RunRecord(
        params=params,
        budget_constants=budgets,
        initial_snapshot=snap0,
        final_snapshot=final,
        snapshots=tuple(taken),
        events=tuple(events),
        series=tuple(series),
        case_counts=case_counts,
        multi_raref_counts=multi_raref,
        a_range=(a_lo, a_hi),
        wall_time=_time.perf_counter() - t_start_wall,
    )


def _check_chaining(fronts: Sequence[Front], t: float) -> None:
    for a, b in zip(fronts, fronts[1:]):
        gap = abs(a.right.w - b.left.w) + abs(a.right.v - b.left.v)
        if gap > 1e-9:
            raise ConsistencyError(
                f"state chain broken between fronts {a.id} and {b.id} (gap {gap})"
            )
        if b.position(t) < a.position(t) - 1e-9:
            raise ConsistencyError(
                f"front order broken between {a.id} and {b.id} at t={t}"
            )


def _enforce_budgets(budgets: BudgetConstants, params: SchemeParams,
                     ws: WeightState, sum_plus: float, sum_minus: float,
                     case_counts: dict, multi_raref: dict,
                     new_fronts: Sequence[Front],
                     a_lo: float, a_hi: float) -> None:
    eps = params.epsilon
    V, K0 = budgets.V, budgets.K0
    tol = 1e-9
    if ws.L > budgets.Lambda:
        raise BudgetError(f"L={ws.L} exceeds Lambda={budgets.Lambda}")
    if ws.Q < budgets.k * (1.0 - 1e-12):
        raise BudgetError(f"Q={ws.Q} fell below k={budgets.k}")
    if sum_plus > K0 + tol:
        raise BudgetError(f"sum of positive dS {sum_plus} exceeds K0={K0}")
    if sum_minus > K0 + V + tol:
        raise BudgetError(f"sum of negative dS {sum_minus} exceeds K0+V={K0 + V}")
    demote = case_counts.get("3B", 0) + case_counts.get("8B", 0)
    if demote > math.ceil(V / eps):
        raise BudgetError(f"big-to-small demotions {demote} exceed ceil(V/eps)")
    promote = case_counts.get("4B", 0) + case_counts.get("9B", 0)
    if promote > math.ceil((K0 + V) / eps):
        raise BudgetError(f"small-to-big promotions {promote} exceed the bound")
    if case_counts.get("1", 0) > math.ceil(V / eps) + math.ceil((K0 + V) / eps):
        raise BudgetError("head-on big 1-shock merges exceed their bound")
    for code, cnt in multi_raref.items():
        if cnt > math.ceil((K0 + V) / params.delta):
            raise BudgetError(f"multi-rarefaction events of type {code} exceed bound")
    for f in new_fronts:
        for w in (f.left.w, f.right.w):
            if abs(w) > budgets.K1 + tol:
                raise BudgetError(f"|w|={abs(w)} exceeds K1={budgets.K1}")
    if params.check_weights and (a_lo < budgets.a_min * (1.0 - 1e-9)
                                 or a_hi > budgets.a_max * (1.0 + 1e-9)):
        raise BudgetError(
            f"weight range [{a_lo}, {a_hi}] left "
            f"[{budgets.a_min}, {budgets.a_max}]"
        )
