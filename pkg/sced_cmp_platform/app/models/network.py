from typing import Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config import DEFAULT_BASE_MVA, DEFAULT_THETA_BOUND


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


# -----------------------------
# 🔹 Elementele rețelei
# -----------------------------
class Bus(_Frozen):
    id: str
    theta_min: float = -DEFAULT_THETA_BOUND
    theta_max: float = DEFAULT_THETA_BOUND

    @model_validator(mode="after")
    def _angle_order(self):
        if self.theta_min > self.theta_max:
            raise ValueError(f"angle bounds: bus {self.id} has theta_min > theta_max")
        return self


class Line(_Frozen):
    """Linie cu trei praguri termice: normal < LTE < STE (MW)."""

    id: str
    from_bus: str
    to_bus: str
    x: float
    zeta_n: float
    zeta_l: float
    zeta_s: float

    @model_validator(mode="after")
    def _line_invariants(self):
        if self.x <= 0:
            raise ValueError(f"reactance: line {self.id} needs x > 0")
        if not (0 < self.zeta_n < self.zeta_l < self.zeta_s):
            raise ValueError(
                f"threshold ordering: line {self.id} needs 0 < zeta_n < zeta_l < zeta_s"
            )
        if self.from_bus == self.to_bus:
            raise ValueError(f"self loop: line {self.id} connects bus {self.from_bus} to itself")
        return self

    @property
    def thresholds(self) -> Tuple[float, float, float]:
        return self.zeta_n, self.zeta_l, self.zeta_s


class Generator(_Frozen):
    id: str
    bus: str
    p_min: float
    p_max: float
    cost: float
    ramp_min: float = -float("inf")
    ramp_max: float = float("inf")

    @model_validator(mode="after")
    def _generator_invariants(self):
        if not (0 <= self.p_min <= self.p_max):
            raise ValueError(f"capacity bounds: generator {self.id} needs 0 <= p_min <= p_max")
        if not (self.ramp_min <= 0 <= self.ramp_max):
            raise ValueError(f"ramp limits: generator {self.id} needs ramp_min <= 0 <= ramp_max")
        return self


class RenewableSource(_Frozen):
    id: str
    bus: str
    penalty: float = Field(ge=0)
    availability: Tuple[float, ...]

    @model_validator(mode="after")
    def _nonnegative(self):
        if any(v < 0 for v in self.availability):
            raise ValueError(f"availability: renewable {self.id} has a negative sample")
        return self


class Load(_Frozen):
    id: str
    bus: str
    penalty: float = Field(ge=0)
    demand: Tuple[float, ...]

    @model_validator(mode="after")
    def _nonnegative(self):
        if any(v < 0 for v in self.demand):
            raise ValueError(f"demand: load {self.id} has a negative sample")
        return self


# -----------------------------
# 🔹 Cazul complet (imutabil după validare)
# -----------------------------
class Case(_Frozen):
    buses: Tuple[Bus, ...]
    lines: Tuple[Line, ...] = ()
    generators: Tuple[Generator, ...] = ()
    renewables: Tuple[RenewableSource, ...] = ()
    loads: Tuple[Load, ...] = ()
    horizon: int = Field(ge=1)
    dt: float = Field(gt=0)
    t_l: int = Field(ge=1)
    t_s: int = Field(ge=1)
    base_mva: float = Field(default=DEFAULT_BASE_MVA, gt=0)

    @model_validator(mode="after")
    def _case_invariants(self):
        if not self.buses:
            raise ValueError("buses: a case needs at least one bus")
        for kind, items in (
            ("bus", self.buses),
            ("line", self.lines),
            ("generator", self.generators),
            ("renewable", self.renewables),
            ("load", self.loads),
        ):
            seen = set()
            for item in items:
                if item.id in seen:
                    raise ValueError(f"duplicate id: {kind} {item.id}")
                seen.add(item.id)

        bus_ids = {b.id for b in self.buses}
        for line in self.lines:
            for end in (line.from_bus, line.to_bus):
                if end not in bus_ids:
                    raise ValueError(f"dangling bus id: line {line.id} references bus {end}")
        for kind, items in (
            ("generator", self.generators),
            ("renewable", self.renewables),
            ("load", self.loads),
        ):
            for item in items:
                if item.bus not in bus_ids:
                    raise ValueError(f"dangling bus id: {kind} {item.id} references bus {item.bus}")

        for r in self.renewables:
            if len(r.availability) < self.horizon:
                raise ValueError(f"series length: renewable {r.id} has fewer than T={self.horizon} samples")
        for d in self.loads:
            if len(d.demand) < self.horizon:
                raise ValueError(f"series length: load {d.id} has fewer than T={self.horizon} samples")

        if self.t_s > self.t_l:
            raise ValueError("duration limits: T_s must not exceed T_l")
        return self

    # -----------------------------
    # 🔹 Utilitare de indexare
    # -----------------------------
    def bus_index(self) -> Dict[str, int]:
        return {b.id: k for k, b in enumerate(self.buses)}

    def reference_bus(self) -> str:
        """Bara cu cel mai mic id (numeric dacă se poate) are unghiul fixat la 0."""
        return min((b.id for b in self.buses), key=_id_sort_key)

    def bus_ids(self) -> List[str]:
        return [b.id for b in self.buses]

    def line_ids(self) -> List[str]:
        return [line.id for line in self.lines]


def _id_sort_key(value: str):
    return (0, int(value), "") if value.isdigit() else (1, 0, value)
