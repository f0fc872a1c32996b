from enum import Enum
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator
from scipy.linalg import lapack


class ConvexProgram(BaseModel):
    """
    min ½xᵀQx + qᵀx + constant_cost
    s.t. A_eq x = b_eq,  G x ≤ h,  lb ≤ x ≤ ub  (±inf permis)

    `tags` are o etichetă per rând de egalitate (ex. "flow_balance:<bus>").
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    Q: np.ndarray
    q: np.ndarray
    constant_cost: float = 0.0
    A_eq: np.ndarray
    b_eq: np.ndarray
    G: np.ndarray
    h: np.ndarray
    lb: np.ndarray
    ub: np.ndarray
    tags: Tuple[Optional[str], ...] = ()

    @model_validator(mode="before")
    @classmethod
    def _fill_defaults(cls, data):
        if not isinstance(data, dict):
            return data
        data = dict(data)
        n = int(data["n"])
        data["Q"] = _matrix(data.get("Q"), n, n)
        data["q"] = _vector(data.get("q"), n, 0.0)
        data["A_eq"] = _matrix(data.get("A_eq"), None, n)
        data["b_eq"] = _vector(data.get("b_eq"), data["A_eq"].shape[0], 0.0)
        data["G"] = _matrix(data.get("G"), None, n)
        data["h"] = _vector(data.get("h"), data["G"].shape[0], 0.0)
        data["lb"] = _vector(data.get("lb"), n, -np.inf)
        data["ub"] = _vector(data.get("ub"), n, np.inf)
        if not data.get("tags"):
            data["tags"] = (None,) * data["A_eq"].shape[0]
        return data

    @model_validator(mode="after")
    def _check(self):
        n = self.n
        if self.Q.shape != (n, n) or self.q.shape != (n,):
            raise ValueError("dimensions: Q must be n×n and q of length n")
        if self.A_eq.shape[1] != n or self.b_eq.shape != (self.A_eq.shape[0],):
            raise ValueError("dimensions: A_eq/b_eq mismatch")
        if self.G.shape[1] != n or self.h.shape != (self.G.shape[0],):
            raise ValueError("dimensions: G/h mismatch")
        if self.lb.shape != (n,) or self.ub.shape != (n,):
            raise ValueError("dimensions: bounds must have length n")
        if len(self.tags) != self.A_eq.shape[0]:
            raise ValueError("dimensions: one tag per equality row")
        if np.any(self.lb > self.ub):
            raise ValueError("bounds: lb must not exceed ub")
        if np.isnan(self.Q).any() or np.isnan(self.q).any():
            raise ValueError("costs: NaN in Q or q")
        if not is_psd(self.Q):
            raise ValueError("convexity: Q must be symmetric positive semidefinite")
        return self

    @property
    def n_eq(self) -> int:
        return self.A_eq.shape[0]

    @property
    def n_ineq(self) -> int:
        return self.G.shape[0]

    @property
    def is_linear(self) -> bool:
        return not self.Q.any()

    def objective_at(self, x: np.ndarray) -> float:
        return float(0.5 * x @ self.Q @ x + self.q @ x + self.constant_cost)

    def rows_tagged(self, prefix: str) -> list:
        return [(k, tag) for k, tag in enumerate(self.tags) if tag and tag.startswith(prefix)]


def is_psd(Q: np.ndarray) -> bool:
    """Q = Qᵀ și Cholesky cu pivotare reușește pe Q + δI, δ = 1e-12·‖Q‖."""
    scale = float(np.linalg.norm(Q))
    if scale == 0.0:
        return True
    if not np.allclose(Q, Q.T, rtol=0.0, atol=1e-12 * scale):
        return False
    shifted = 0.5 * (Q + Q.T) + 1e-12 * scale * np.eye(Q.shape[0])
    _, _, rank, info = lapack.dpstrf(shifted, tol=0.0)
    return info >= 0 and rank == Q.shape[0]


def _matrix(value, rows, cols) -> np.ndarray:
    if value is None:
        return np.zeros((rows or 0, cols))
    arr = np.asarray(value, dtype=float)
    if arr.ndim == 1 and arr.size == 0:
        arr = arr.reshape(0, cols)
    return arr


def _vector(value, size, fill) -> np.ndarray:
    if value is None:
        return np.full(size, fill, dtype=float)
    return np.asarray(value, dtype=float).reshape(-1)


# -----------------------------
# 🔹 Rezultatul solverului
# -----------------------------
class SolverStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    ITERATION_LIMIT = "iteration_limit"
    NUMERICAL_FAILURE = "numerical_failure"


class KktResiduals(BaseModel):
    """
    Reziduuri absolute, norma ∞, pe programul original: fezabilitate primală,
    staționaritate (plus semnul dualelor) și max |dual · slack|.
    """

    model_config = ConfigDict(frozen=True)

    primal: float
    dual: float
    complementarity: float

    def worst(self) -> float:
        return max(self.primal, self.dual, self.complementarity)


class SolverSolution(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    status: SolverStatus
    x: np.ndarray
    eq_duals: np.ndarray
    ineq_duals: np.ndarray
    lower_duals: np.ndarray
    upper_duals: np.ndarray
    objective: float
    dual_objective: float
    kkt_residuals: KktResiduals
    iterations: int

    @property
    def optimal(self) -> bool:
        return self.status == SolverStatus.OPTIMAL
