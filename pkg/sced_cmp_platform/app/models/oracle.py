from typing import Tuple

from pydantic import BaseModel, ConfigDict

from .dispatch import Zone


class ZoneAssignment(BaseModel):
    model_config = ConfigDict(frozen=True)

    zones: Tuple[Zone, ...]

    def counts(self) -> Tuple[int, int]:
        """(#lte + #ste, #ste): numărul de linii penalizate cu γℓ, respectiv γs."""
        n_ste = sum(1 for z in self.zones if z == Zone.STE)
        n_lte = sum(1 for z in self.zones if z == Zone.LTE)
        return n_lte + n_ste, n_ste


class OracleResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    objective: float
    flows: Tuple[float, ...]
    assignment: ZoneAssignment
    evaluated: int
    infeasible: int
