from enum import Enum
from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True)


class Zone(str, Enum):
    NORMAL = "normal"
    LTE = "lte"
    STE = "ste"


# -----------------------------
# 🔹 Indexarea variabilelor de decizie
# -----------------------------
class Block(_Frozen):
    start: int = Field(ge=0)
    stop: int = Field(ge=0)

    @property
    def slice(self) -> slice:
        return slice(self.start, self.stop)

    @property
    def size(self) -> int:
        return self.stop - self.start

    def index(self, k: int) -> int:
        return self.start + k


BLOCK_ORDER = ("gen", "renewable", "load", "flow", "theta", "curtail", "shed", "zone_n", "zone_l")


class VariableMap(_Frozen):
    """
    p_g (convenționale), p_g (regenerabile), p_d servit, f, θ,
    u_g / v_d (epigraf pentru (·)+), iar la DCA a_n / a_l (epigraf pentru g).
    """

    gen: Block
    renewable: Block
    load: Block
    flow: Block
    theta: Block
    curtail: Block
    shed: Block
    zone_n: Optional[Block] = None
    zone_l: Optional[Block] = None
    n: int

    @model_validator(mode="after")
    def _contiguous(self):
        cursor = 0
        for name in BLOCK_ORDER:
            block = getattr(self, name)
            if block is None:
                continue
            if block.start != cursor or block.stop < block.start:
                raise ValueError(f"variable map: block {name} is not contiguous")
            cursor = block.stop
        if cursor != self.n:
            raise ValueError("variable map: blocks do not cover n")
        return self


class EffectiveBounds(_Frozen):
    """Marginea activă pe |f| a fiecărei linii în perioada curentă (MW)."""

    caps: Tuple[float, ...]


class PeriodObservation(_Frozen):
    period: int = Field(ge=0)
    availability: Tuple[float, ...]
    demand: Tuple[float, ...]

    @model_validator(mode="after")
    def _nonnegative(self):
        if any(v < 0 for v in self.availability) or any(v < 0 for v in self.demand):
            raise ValueError("observation: availability and demand must be >= 0")
        return self


class DispatchPoint(BaseModel):
    """Punct de dispecer extras din vectorul x al unui program."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    gen: np.ndarray
    renewable: np.ndarray
    load: np.ndarray
    flow: np.ndarray
    theta: np.ndarray


class CostBreakdown(_Frozen):
    generation: float
    curtailment: float
    shed: float
    shed_energy: float
    curtailed_energy: float

    @property
    def total(self) -> float:
        return self.generation + self.curtailment + self.shed


# -----------------------------
# 🔹 Starea orizontului rulant
# -----------------------------
class DispatchState(_Frozen):
    prev_gen: Tuple[float, ...]
    prev_flow: Tuple[float, ...]
    tau_l: Tuple[int, ...]
    tau_s: Tuple[int, ...]

    @model_validator(mode="after")
    def _counters(self):
        if len(self.tau_l) != len(self.tau_s):
            raise ValueError("state: tau_l and tau_s must have one entry per line")
        for tl, ts in zip(self.tau_l, self.tau_s):
            if tl < 0 or ts < 0:
                raise ValueError("state: duration counters must be >= 0")
            if ts > 0 and tl == 0:
                raise ValueError("state: tau_s > 0 requires tau_l > 0")
        return self


class ZoneCounts(_Frozen):
    normal: int
    lte: int
    ste: int

    @property
    def total(self) -> int:
        return self.normal + self.lte + self.ste

    def triple(self) -> str:
        return f"{self.normal} / {self.lte} / {self.ste}"


class PeriodReport(_Frozen):
    period: int
    operating_cost: float
    generation_cost: float
    curtailment_cost: float
    shed_cost: float
    shed_energy: float
    curtailed_energy: float
    zones: ZoneCounts
    lmp: Tuple[float, ...]
    flows: Tuple[float, ...]
    dca_iterations: int = 0
    status: str = "optimal"


class SimulationSummary(_Frozen):
    mode: Literal["cmp", "strict"]
    periods: int
    total_cost: float
    total_shed: float
    avg_normal: float
    avg_lte: float
    avg_ste: float
    failed_periods: int = 0
    scarcity_periods: int = 0

    def zone_triple(self, digits: int = 3) -> str:
        return " / ".join(_compact(v, digits) for v in (self.avg_normal, self.avg_lte, self.avg_ste))


class SimulationResult(_Frozen):
    bus_ids: Tuple[str, ...]
    line_ids: Tuple[str, ...]
    reports: List[PeriodReport]
    summary: SimulationSummary


def _compact(value: float, digits: int) -> str:
    text = f"{value:.{digits}f}"
    return text.rstrip("0").rstrip(".") if "." in text else text
