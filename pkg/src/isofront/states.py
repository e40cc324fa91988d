"""Phase-space states, entropy algebra, and the wave-strength function.

The system is the 1-d isothermal p-system in (tau, v) with pressure
p(tau) = 1/tau.  All wave algebra happens in the logarithmic coordinate
w = -ln(tau), where the total variation of piecewise-constant profiles
is non-increasing across interactions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class State:
    """A point (tau, v): specific volume and velocity."""

    tau: float
    v: float

    def __post_init__(self):
        if not (math.isfinite(self.tau) and math.isfinite(self.v)):
            raise DomainError(f"non-finite state ({self.tau}, {self.v})")
        if self.tau <= 0.0:
            raise DomainError(f"non-positive specific volume {self.tau}")

    @property
    def rho(self) -> float:
        return 1.0 / self.tau

    @property
    def pressure(self) -> float:
        return 1.0 / self.tau


@dataclass(frozen=True)
class LogState:
    """The (w, v) image of a state, w = -ln(tau)."""

    w: float
    v: float

    def __post_init__(self):
        if not (math.isfinite(self.w) and math.isfinite(self.v)):
            raise DomainError(f"non-finite log-state ({self.w}, {self.v})")


@dataclass(frozen=True)
class EntropyPair:
    """Entropy value and entropy-flux value at one state."""

    eta: float
    q: float


def to_log(s: State) -> LogState:
    return LogState(w=-math.log(s.tau), v=s.v)


def from_log(ls: LogState) -> State:
    return State(tau=math.exp(-ls.w), v=ls.v)


def W_func(s: float) -> float:
    """Wave-strength function: s on s <= 0, 2*sinh(s/2) on s >= 0.

    Strictly increasing, C^1 at 0 (both one-sided derivatives are 1).
    """
    if s <= 0.0:
        return s
    return 2.0 * math.sinh(0.5 * s)


def W_deriv(s: float) -> float:
    if s <= 0.0:
        return 1.0
    return math.cosh(0.5 * s)


def eigenvalues(s: State) -> tuple[float, float]:
    """Characteristic speeds (-1/tau, +1/tau)."""
    lam = 1.0 / s.tau
    return -lam, lam


def eigenvalues_log(ls: LogState) -> tuple[float, float]:
    lam = math.exp(ls.w)
    return -lam, lam


def flux(s: State) -> tuple[float, float]:
    """Flux vector of the system for the conserved variables (tau, v)."""
    return -s.v, s.pressure


def entropy(s: State) -> float:
    """eta(tau, v) = v^2/2 - ln(tau), strictly convex."""
    return 0.5 * s.v * s.v - math.log(s.tau)


def entropy_flux(s: State) -> float:
    """q(tau, v) = p(tau) v = v/tau."""
    return s.v / s.tau


def entropy_pair(s: State) -> EntropyPair:
    return EntropyPair(eta=entropy(s), q=entropy_flux(s))


def grad_entropy(s: State) -> tuple[float, float]:
    return -1.0 / s.tau, s.v


def rel_entropy(a: State, b: State) -> float:
    """Relative entropy eta(a|b) = eta(a) - eta(b) - grad eta(b).(a-b).

    Non-negative, zero iff a == b; quadratic near a == b.  Expanding
    the definition gives (v_a - v_b)^2 / 2 + x - log(1 + x) with
    x = tau_a / tau_b - 1, which is the form computed here: the naive
    difference of entropies cancels catastrophically for nearby states
    and can round below zero.
    """
    x = (a.tau - b.tau) / b.tau
    return 0.5 * (a.v - b.v) ** 2 + x - math.log1p(x)


def rel_flux(a: State, b: State) -> float:
    """Relative entropy flux q(a;b) = q(a) - q(b) - grad eta(b).(f(a)-f(b)).

    Algebraically equal to (v_a - v_b)(1/tau_a - 1/tau_b); computed here
    from the defining combination so tests can check the closed form
    independently.
    """
    gtau, gv = grad_entropy(b)
    fa1, fa2 = flux(a)
    fb1, fb2 = flux(b)
    return entropy_flux(a) - entropy_flux(b) - gtau * (fa1 - fb1) - gv * (fa2 - fb2)
