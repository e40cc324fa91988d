"""Front records: one moving discontinuity of the piecewise-constant
approximation, with its family, kind, and big/small label."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import ConsistencyError
from .states import LogState

SHOCK = "shock"
RAREFACTION = "rarefaction"
BIG = "big"
SMALL = "small"


@dataclass(frozen=True)
class WaveLabel:
    """Family (1|2), kind (shock|rarefaction), and shock size label."""

    family: int
    kind: str
    size: str | None = None

    def __post_init__(self):
        if self.family not in (1, 2):
            raise ConsistencyError(f"bad family {self.family}")
        if self.kind not in (SHOCK, RAREFACTION):
            raise ConsistencyError(f"bad kind {self.kind}")
        if self.kind == SHOCK and self.size not in (BIG, SMALL):
            raise ConsistencyError("shocks must be labeled big or small")
        if self.kind == RAREFACTION and self.size is not None:
            raise ConsistencyError("rarefactions carry no size label")

    @property
    def letter(self) -> str:
        """One-letter wave code: a/b big/small 1-shock, c/d big/small
        2-shock, e/f 1-/2-rarefaction."""
        if self.kind == RAREFACTION:
            return "e" if self.family == 1 else "f"
        if self.family == 1:
            return "a" if self.size == BIG else "b"
        return "c" if self.size == BIG else "d"


@dataclass(frozen=True)
class Front:
    """A discontinuity travelling at constant speed between events.

    `x0` is the position at anchor time `t0`; the trajectory is
    x(t) = x0 + speed * (t - t0).
    """

    id: int
    label: WaveLabel
    left: LogState
    right: LogState
    x0: float
    t0: float
    speed: float
    birth_time: float

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
        """Signed strength in w-units (positive for shocks)."""
        if self.family == 1:
            return self.right.w - self.left.w
        return self.left.w - self.right.w

    def position(self, t: float) -> float:
        return self.x0 + self.speed * (t - self.t0)

    def at(self, t: float) -> "Front":
        return replace(self, x0=self.position(t), t0=t)

    def validate(self) -> None:
        """Check the sign conventions tying kind, strength, and speed."""
        s = self.sigma
        if self.kind == SHOCK:
            if s <= 0.0:
                raise ConsistencyError(f"shock front {self.id} has sigma {s}")
            if self.family == 1 and self.speed >= 0.0:
                raise ConsistencyError(f"1-shock {self.id} has speed {self.speed}")
            if self.family == 2 and self.speed <= 0.0:
                raise ConsistencyError(f"2-shock {self.id} has speed {self.speed}")
        else:
            if s >= 0.0:
                raise ConsistencyError(f"rarefaction front {self.id} has sigma {s}")
        if not math.isfinite(self.speed):
            raise ConsistencyError(f"front {self.id} has non-finite speed")
