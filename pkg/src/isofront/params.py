"""Scheme parameters and their validity constraints."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ConfigError


@dataclass(frozen=True)
class SchemeParams:
    """All constants of one front-tracking run.

    delta     -- rarefaction fan mesh (0 < delta < epsilon/2)
    epsilon   -- big/small shock threshold
    c0, c1    -- weight constants (c0*epsilon <= 1/2, 0 < c1 <= 1/4)
    t_end     -- time horizon
    domain_radius -- initial data lives on [-R, R]
    cone_speed    -- cone-of-information speed l (None: e^{K1} at run time)
    beta      -- vacuum floor for tau in the initial data
    box_m_hat, box_c_hat, box_C_hat -- admissible state box |v| <= M,
                 c <= tau <= C, used for input validation and fitting
    seed      -- RNG seed for data presets
    """

    delta: float = 0.05
    epsilon: float = 0.5
    c0: float = 1.0
    c1: float = 0.2
    t_end: float = 5.0
    domain_radius: float = 10.0
    cone_speed: float | None = None
    beta: float = 0.05
    box_m_hat: float = 3.0
    box_c_hat: float = 0.2
    box_C_hat: float = 5.0
    seed: int = 0
    tol_consistency: float = 1e-10
    tol_monotone: float = 1e-12
    chain_check_every: int = 100
    check_weights: bool = True
    full_weight_check: bool = True

    def __post_init__(self):
        if not 0.0 < self.delta < 0.5 * self.epsilon:
            raise ConfigError(
                f"need 0 < delta < epsilon/2, got delta={self.delta}, epsilon={self.epsilon}"
            )
        if self.c0 <= 0.0 or self.c0 * self.epsilon > 0.5 + 1e-15:
            raise ConfigError(f"need c0 > 0 and c0*epsilon <= 1/2, got c0={self.c0}")
        if not 0.0 < self.c1 <= 0.25:
            raise ConfigError(f"need 0 < c1 <= 1/4, got c1={self.c1}")
        if self.t_end <= 0.0 or self.domain_radius <= 0.0:
            raise ConfigError("t_end and domain_radius must be positive")
        if self.beta <= 0.0:
            raise ConfigError(f"beta must be positive, got {self.beta}")
        if not (0.0 < self.box_c_hat < self.box_C_hat):
            raise ConfigError("state box needs 0 < c_hat < C_hat")
        if self.cone_speed is not None and self.cone_speed <= 0.0:
            raise ConfigError("cone_speed must be positive when given")

    def require_cone_speed(self, k1: float) -> float:
        """Cone speed validated against the run's realized bound e^{K1}."""
        lam_max = math.exp(k1)
        if self.cone_speed is None:
            return 1.01 * lam_max
        if self.cone_speed < lam_max:
            raise ConfigError(
                f"cone_speed {self.cone_speed} below maximal wave speed {lam_max:.6g}"
            )
        return self.cone_speed
