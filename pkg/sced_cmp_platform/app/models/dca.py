from enum import Enum
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from ..config import (
    DEFAULT_EPSILON,
    DEFAULT_GAMMA_L,
    DEFAULT_GAMMA_S,
    DEFAULT_MAX_ITERS,
    DEFAULT_PROX,
    DEFAULT_TOL_OBJ,
    DEFAULT_TOL_X,
    SOLVER_MAX_ITERS,
    SOLVER_TOL,
)
from .dispatch import DispatchPoint


class DcaConfig(BaseModel):
    """Hiperparametrii DCA; validați de pydantic la construcție."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    epsilon: float = Field(default=DEFAULT_EPSILON, gt=0)
    gamma_l: float = Field(default=DEFAULT_GAMMA_L, gt=0)
    gamma_s: float = Field(default=DEFAULT_GAMMA_S, gt=0)
    prox_c: float = Field(default=DEFAULT_PROX, ge=0)
    tol_obj: float = Field(default=DEFAULT_TOL_OBJ, gt=0)
    tol_x: float = Field(default=DEFAULT_TOL_X, gt=0)
    max_iters: int = Field(default=DEFAULT_MAX_ITERS, ge=1)
    solver_tol: float = Field(default=SOLVER_TOL, gt=0)
    solver_max_iters: int = Field(default=SOLVER_MAX_ITERS, ge=1)
    lmp_source: Literal["final-subproblem", "resolve"] = "final-subproblem"


class DcaStatus(str, Enum):
    CONVERGED = "converged"
    MAX_ITERS = "max_iters"
    SUBPROBLEM_ERROR = "subproblem_error"


class DcaIteration(BaseModel):
    model_config = ConfigDict(frozen=True)

    approx_objective: float
    exact_objective: float
    flow_change: float


class DcaResult(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    status: DcaStatus
    point: Optional[DispatchPoint]
    x: Optional[Tuple[float, ...]]
    initial_objective: float
    iterations: List[DcaIteration]
    lmp: Tuple[float, ...] = ()
    detail: str = ""

    @property
    def flows(self):
        return None if self.point is None else self.point.flow

    @property
    def objective_trace(self) -> List[float]:
        """Obiectivul aproximat: punctul inițial urmat de fiecare iterat."""
        return [self.initial_objective] + [it.approx_objective for it in self.iterations]
