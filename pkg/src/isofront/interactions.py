"""Classification and resolution of pairwise front collisions.

Every geometrically colliding pair falls into one of ten non-trivial
cases (same-family collisions), nine trivial crossings (a 2-family wave
overtaking a 1-family wave), or is impossible (same-family rarefaction
pairs never meet).  Non-trivial cases 3/4/5/8/9/10 split into A/B
subcases by the strength or kind of the outgoing wave in the incoming
shock's family.

The published case formulas assume the shock is the left incoming wave.
The opposite order also occurs; it is handled through the mirror
symmetry x -> -x, v -> -v, which swaps families and maps each case to
its partner (1<->6, 2<->7, 3<->8, 4<->9, 5<->10).  The case code is
always determined by the unordered pair of incoming wave labels, so the
weight-update rules stay attached to the same codes in either
orientation.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .errors import ConsistencyError
from .fronts import BIG, RAREFACTION, SHOCK, SMALL, Front, WaveLabel
from .params import SchemeParams
from .riemann import (
    ZERO_STRENGTH,
    apply_wave_curve,
    fan_partition,
    shock_speed,
    solve_intermediate,
)
from .states import LogState, eigenvalues_log

SpeedPolicy = Callable[[int, LogState, LogState], float]

L_CASES = ("1", "3B", "9B")


@dataclass(frozen=True)
class OutWave:
    """Blueprint of one outgoing front (no position/id yet)."""

    label: WaveLabel
    left: LogState
    right: LogState
    speed: float

    @property
    def family(self) -> int:
        return self.label.family

    @property
    def kind(self) -> str:
        return self.label.kind

    @property
    def size(self) -> str | None:
        return self.label.size

    @property
    def sigma(self) -> float:
        if self.label.family == 1:
            return self.right.w - self.left.w
        return self.left.w - self.right.w


@dataclass(frozen=True)
class InteractionOutcome:
    """A resolved collision: case code, outgoing blueprint, bookkeeping."""

    case_code: str
    outgoing: tuple[OutWave, ...]
    dS: float
    dB: float
    dL: int
    q_factor: float
    w_m_prime: float
    orientation: str


def _small_sum(waves) -> float:
    return sum(w.sigma for w in waves if w.kind == SHOCK and w.size == SMALL)


def _total_var(waves) -> float:
    return sum(abs(w.sigma) for w in waves)


def _check_colliding(left: Front, right: Front) -> None:
    if left.speed <= right.speed:
        raise ConsistencyError(
            f"fronts {left.id},{right.id} are not colliding "
            f"(speeds {left.speed}, {right.speed})"
        )


def classify_pair(left: Front, right: Front, params: SchemeParams) -> str:
    """Case code for a colliding adjacent pair; IMPOSSIBLE for
    same-family rarefaction pairs (which never collide)."""
    if left.kind == RAREFACTION and right.kind == RAREFACTION and left.family == right.family:
        return "IMPOSSIBLE"
    _check_colliding(left, right)
    if left.family != right.family:
        return _trivial_code(left, right)
    return _resolve_same_family(left, right, params, speed_policy=None).case_code


def _trivial_code(left: Front, right: Front) -> str:
    if not (left.family == 2 and right.family == 1):
        raise ConsistencyError(
            "cross-family collision must have the 2-family wave on the left"
        )
    x, y = sorted([left.label.letter, right.label.letter])
    return f"TRIV:{x}+{y}"


def resolve_trivial(
    ul: LogState, um: LogState, ur: LogState
) -> tuple[tuple[LogState, LogState], tuple[LogState, LogState]]:
    """State pairs of the waves after a trivial crossing.

    The strengths pass through unchanged and the new intermediate
    satisfies w_m' = w_l + w_r - w_m in closed form (exact for this
    system: the wave curves are translation invariant in (w, v) and
    W adds over the two families).
    """
    sigma1 = ur.w - um.w
    um_new = apply_wave_curve(1, sigma1, ul)
    return (ul, um_new), (um_new, ur)


def resolve_interaction(
    left: Front,
    right: Front,
    params: SchemeParams,
    speed_policy: Optional[SpeedPolicy] = None,
) -> InteractionOutcome:
    """Resolve one colliding pair into its outgoing fronts and the
    bookkeeping deltas, cross-checked against the per-case formulas."""
    _check_colliding(left, right)
    if left.family != right.family:
        return _resolve_cross_family(left, right, speed_policy)
    if left.kind == RAREFACTION and right.kind == RAREFACTION:
        raise ConsistencyError("same-family rarefactions cannot collide")
    return _resolve_same_family(left, right, params, speed_policy)


def _speed(policy: Optional[SpeedPolicy], family: int, l: LogState, r: LogState) -> float:
    if policy is None:
        return shock_speed(l, r, family)
    return policy(family, l, r)


def _resolve_cross_family(
    left: Front, right: Front, speed_policy: Optional[SpeedPolicy]
) -> InteractionOutcome:
    code = _trivial_code(left, right)
    (p1l, p1r), (p2l, p2r) = resolve_trivial(left.left, left.right, right.right)
    out = []
    for label, (sl, sr) in ((right.label, (p1l, p1r)), (left.label, (p2l, p2r))):
        if label.kind == SHOCK:
            speed = _speed(speed_policy, label.family, sl, sr)
        else:
            lam1, lam2 = eigenvalues_log(sr)
            speed = lam1 if label.family == 1 else lam2
        out.append(OutWave(label=label, left=sl, right=sr, speed=speed))
    return InteractionOutcome(
        case_code=code,
        outgoing=tuple(out),
        dS=0.0,
        dB=0.0,
        dL=0,
        q_factor=1.0,
        w_m_prime=p1r.w,
        orientation="trivial",
    )


def _case_number(left: Front, right: Front) -> str:
    fam = left.family
    kinds = {left.kind, right.kind}
    if kinds == {SHOCK}:
        sizes = (left.size, right.size)
        if sizes == (BIG, BIG):
            return "1" if fam == 1 else "6"
        if SMALL in sizes and BIG in sizes:
            return "2" if fam == 1 else "7"
        return "4" if fam == 1 else "9"
    shock = left if left.kind == SHOCK else right
    if shock.size == BIG:
        return "3" if fam == 1 else "8"
    return "5" if fam == 1 else "10"


def _resolve_same_family(
    left: Front,
    right: Front,
    params: SchemeParams,
    speed_policy: Optional[SpeedPolicy],
) -> InteractionOutcome:
    fam = left.family
    ul, ur = left.left, right.right
    dec = solve_intermediate(ul, ur)
    mid = LogState(w=dec.w_m, v=dec.v_m)
    base = _case_number(left, right)
    eps = params.epsilon
    # strength of the outgoing wave in the incoming shocks' family
    sig_same = dec.sigma1 if fam == 1 else dec.sigma2
    sig_other = dec.sigma2 if fam == 1 else dec.sigma1

    same_label: WaveLabel | None
    if base in ("1", "2", "6", "7"):
        code = base
        if sig_same <= 0.0:
            raise ConsistencyError(f"case {base}: merged shock has sigma {sig_same}")
        if sig_other > ZERO_STRENGTH:
            raise ConsistencyError(
                f"case {base}: outgoing opposite wave is a shock ({sig_other})"
            )
        same_label = WaveLabel(fam, SHOCK, BIG)
    elif base in ("3", "8"):
        if sig_same <= 0.0:
            raise ConsistencyError(f"case {base}: big shock annihilated ({sig_same})")
        sub = "A" if sig_same >= 0.5 * eps else "B"
        code = base + sub
        same_label = WaveLabel(fam, SHOCK, BIG if sub == "A" else SMALL)
        if sig_other <= 0.0:
            raise ConsistencyError(
                f"case {base}: reflected wave is not a shock ({sig_other})"
            )
    elif base in ("4", "9"):
        if sig_same <= 0.0:
            raise ConsistencyError(f"case {base}: merged shock has sigma {sig_same}")
        if sig_other > ZERO_STRENGTH:
            raise ConsistencyError(
                f"case {base}: outgoing opposite wave is a shock ({sig_other})"
            )
        sub = "B" if sig_same >= eps else "A"
        code = base + sub
        same_label = WaveLabel(fam, SHOCK, BIG if sub == "B" else SMALL)
    else:  # 5, 10
        sub = "A" if sig_same > 0.0 else "B"
        code = base + sub
        same_label = WaveLabel(fam, SHOCK, SMALL) if sub == "A" else None
        if sig_other <= 0.0:
            raise ConsistencyError(
                f"case {base}: reflected wave is not a shock ({sig_other})"
            )

    other_fam = 2 if fam == 1 else 1
    out: list[OutWave] = []

    def emit(family: int, sigma: float, sl: LogState, sr: LogState, label: WaveLabel | None):
        if sigma > ZERO_STRENGTH:
            if label is None:
                label = WaveLabel(family, SHOCK, SMALL)
            if label.size == SMALL and sigma >= eps:
                raise ConsistencyError(
                    f"case {code}: small outgoing {family}-shock with sigma {sigma} >= epsilon"
                )
            if label.size == BIG and sigma < 0.5 * eps - 1e-12:
                raise ConsistencyError(
                    f"case {code}: big outgoing {family}-shock with sigma {sigma} < epsilon/2"
                )
            out.append(
                OutWave(label=label, left=sl, right=sr,
                        speed=_speed(speed_policy, family, sl, sr))
            )
        elif sigma < -ZERO_STRENGTH:
            pieces = fan_partition(family, sigma, sl, params.delta)
            for i, p in enumerate(pieces):
                pr = sr if i == len(pieces) - 1 else p.right_state
                lam1, lam2 = eigenvalues_log(pr)
                out.append(
                    OutWave(label=WaveLabel(family, RAREFACTION), left=p.left_state,
                            right=pr, speed=lam1 if family == 1 else lam2)
                )
        # |sigma| <= ZERO_STRENGTH: degenerate wave, dropped

    if fam == 1:
        emit(1, dec.sigma1, ul, mid, same_label)
        emit(2, dec.sigma2, mid, ur, None)
    else:
        emit(1, dec.sigma1, ul, mid, None)
        emit(2, dec.sigma2, mid, ur, same_label)

    incoming = (left, right)
    dS = _small_sum(out) - _small_sum(incoming)
    dB = _total_var(out) - _total_var(incoming)
    if dB > 1e-12:
        raise ConsistencyError(f"case {code}: total variation increased by {dB}")

    orientation = _orientation(left, right, base)
    fS, fB = _symbolic_deltas(code, orientation, ul.w, left.right.w, ur.w, dec.w_m)
    tol = params.tol_consistency
    if abs(dS - fS) > tol or abs(dB - fB) > tol:
        raise ConsistencyError(
            f"case {code} ({orientation}): front-list deltas (dS={dS}, dB={dB}) "
            f"disagree with case formulas (dS={fS}, dB={fB})"
        )

    qf = _q_factor(code, params.c0, left, right, dec)
    if not 0.0 < qf <= 1.0 + 1e-12:
        raise ConsistencyError(f"case {code}: q-factor {qf} outside (0, 1]")
    qf = min(qf, 1.0)
    dL = 1 if code in L_CASES else 0
    if code in ("4B", "9B"):
        # needed for pointwise weight monotonicity with C1 <= 1/4
        prod = (1.0 - params.c0 * left.sigma) * (1.0 - params.c0 * right.sigma)
        if prod < 0.25 - 1e-12 or prod < params.c1 - 1e-12:
            raise ConsistencyError(
                f"case {code}: (1-c0*s1)(1-c0*s2)={prod} below weight bound"
            )

    return InteractionOutcome(
        case_code=code,
        outgoing=tuple(out),
        dS=dS,
        dB=dB,
        dL=dL,
        q_factor=qf,
        w_m_prime=dec.w_m,
        orientation=orientation,
    )


def _orientation(left: Front, right: Front, base: str) -> str:
    if base in ("1", "4", "6", "9"):
        return "printed"
    if base in ("2", "7"):
        return "printed" if left.size == BIG else "reversed"
    return "printed" if left.kind == SHOCK else "reversed"


_MIRROR = {"1": "6", "2": "7", "3": "8", "4": "9", "5": "10",
           "6": "1", "7": "2", "8": "3", "9": "4", "10": "5"}


def _printed_deltas(code: str, wl: float, wm: float, wr: float, wmp: float) -> tuple[float, float]:
    """Published per-case (dS, dB) in the published left/right order.

    The 9A dS is stated with the opposite sign in the source table; the
    value used here (wmp - wl, which is negative) is the one consistent
    with direct recounting of the small-shock total.
    """
    if code == "1" or code == "6":
        return 0.0, 0.0
    if code == "2":
        return -(wr - wm), 0.0
    if code == "7":
        return wr - wm, 0.0
    if code == "3A":
        return wmp - wr, -2.0 * (wm - wmp)
    if code == "3B":
        return 2.0 * wmp - wl - wr, -2.0 * (wm - wmp)
    if code == "4A":
        return wmp - wr, 0.0
    if code == "4B":
        return wl - wr, 0.0
    if code == "5A":
        return 2.0 * wmp - wm - wr, -2.0 * (wm - wmp)
    if code == "5B":
        return wl - wm + wmp - wr, -2.0 * (wm - wl)
    if code == "8A":
        return wmp - wl, -2.0 * (wl - wm - wmp + wr)
    if code == "8B":
        return 2.0 * wmp - wl - wr, -2.0 * (wl - wm - wmp + wr)
    if code == "9A":
        return wmp - wl, 0.0
    if code == "9B":
        return wr - wl, 0.0
    if code == "10A":
        return 2.0 * wmp - 2.0 * wl - wr + wm, -2.0 * (wl - wm + wr - wmp)
    if code == "10B":
        return wmp - 2.0 * wl + wm, -2.0 * (wl - wm)
    raise ConsistencyError(f"unknown case code {code}")


def _symbolic_deltas(
    code: str, orientation: str, wl: float, wm: float, wr: float, wmp: float
) -> tuple[float, float]:
    if orientation == "printed":
        return _printed_deltas(code, wl, wm, wr, wmp)
    base, sub = (code[:-1], code[-1]) if code[-1] in "AB" else (code, "")
    return _printed_deltas(_MIRROR[base] + sub, wr, wm, wl, wmp)


def _q_factor(code: str, c0: float, left: Front, right: Front, dec) -> float:
    """Small-shock number appended to the running product Q, or 1.

    Only cases 2, 3A, 4A, 5A, 5B contribute; the factors are written in
    terms of the actual incoming/outgoing strengths so they apply in
    either left/right orientation.
    """
    if code == "2":
        small = left if left.size == SMALL else right
        return 1.0 - c0 * small.sigma
    if code == "3A":
        return 1.0 / (1.0 + c0 * dec.sigma2)
    if code == "4A":
        num = (1.0 - c0 * left.sigma) * (1.0 - c0 * right.sigma)
        return min(num / (1.0 - c0 * dec.sigma1), 1.0)
    if code in ("5A", "5B"):
        shock = left if left.kind == SHOCK else right
        num = 1.0 - c0 * shock.sigma
        den = 1.0 + c0 * dec.sigma2
        if code == "5A":
            den *= 1.0 - c0 * dec.sigma1
        return num / den
    return 1.0
