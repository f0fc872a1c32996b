from typing import Literal, Tuple

from pydantic import BaseModel, ConfigDict, field_validator

from ..config import GRID_EPSILONS, GRID_GAMMAS


class GridSearchSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    epsilons: Tuple[float, ...] = GRID_EPSILONS
    gammas_l: Tuple[float, ...] = GRID_GAMMAS
    gammas_s: Tuple[float, ...] = GRID_GAMMAS
    metric: Literal["total_cost"] = "total_cost"

    @field_validator("epsilons", "gammas_l", "gammas_s")
    @classmethod
    def _positive_nonempty(cls, values):
        if not values:
            raise ValueError("grid: value lists must be non-empty")
        if any(v <= 0 for v in values):
            raise ValueError("grid: all values must be positive")
        return values

    @property
    def size(self) -> int:
        return len(self.epsilons) * len(self.gammas_l) * len(self.gammas_s)
