"""Front tracking for the 1-d isothermal p-system with an a-contraction
weight: exact Riemann solver, event-driven wave interactions, weight
bookkeeping, and budget auditing."""

from .engine import (
    PiecewiseConstant,
    RunRecord,
    Snapshot,
    approximate_initial_data,
    evaluate,
    l1_distance,
    next_collision,
    run,
)
from .errors import (
    BudgetError,
    ConfigError,
    ConsistencyError,
    DomainError,
    IsofrontError,
    SolverError,
)
from .fronts import Front, WaveLabel
from .interactions import InteractionOutcome, classify_pair, resolve_interaction
from .params import SchemeParams
from .riemann import WaveDecomposition, shock_speed, solve_intermediate
from .states import LogState, State, from_log, to_log
from .weight import BudgetConstants, WeightState, compute_budgets, eval_weight

__all__ = [
    "BudgetConstants", "BudgetError", "ConfigError", "ConsistencyError",
    "DomainError", "Front", "InteractionOutcome", "IsofrontError",
    "LogState", "PiecewiseConstant", "RunRecord", "SchemeParams",
    "Snapshot", "SolverError", "State", "WaveDecomposition", "WaveLabel",
    "WeightState", "approximate_initial_data", "classify_pair",
    "compute_budgets", "eval_weight", "evaluate", "from_log",
    "l1_distance", "next_collision", "resolve_interaction", "run",
    "shock_speed", "solve_intermediate", "to_log",
]

__version__ = "0.1.0"
