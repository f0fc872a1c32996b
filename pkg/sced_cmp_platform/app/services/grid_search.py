"""Căutarea pe grilă (ε, γℓ, γs): o simulare CMP completă per celulă."""
import itertools
import logging
import math
from typing import Dict, List, Optional, Sequence

from joblib import Parallel, delayed

from ..errors import ScedError
from ..models.dca import DcaConfig
from ..models.grid import GridSearchSpec
from ..models.network import Case
from .rolling_horizon import simulate

logger = logging.getLogger(__name__)

GRID_COLUMNS = [
    "epsilon",
    "gamma_l",
    "gamma_s",
    "total_cost",
    "total_shed",
    "avg_normal",
    "avg_lte",
    "avg_ste",
    "status",
]


def _run_cell(case: Case, cfg: DcaConfig, load_scale: float) -> Dict:
    row = {"epsilon": cfg.epsilon, "gamma_l": cfg.gamma_l, "gamma_s": cfg.gamma_s}
    try:
        summary = simulate(case, "cmp", cfg, load_scale).summary
    except (ScedError, ValueError) as exc:
        logger.warning(
            "grid cell failed",
            extra={"epsilon": cfg.epsilon, "gamma_l": cfg.gamma_l, "gamma_s": cfg.gamma_s, "error": str(exc)},
        )
        nan = float("nan")
        return {
            **row,
            "total_cost": nan,
            "total_shed": nan,
            "avg_normal": nan,
            "avg_lte": nan,
            "avg_ste": nan,
            "status": "failed",
        }
    return {
        **row,
        "total_cost": summary.total_cost,
        "total_shed": summary.total_shed,
        "avg_normal": summary.avg_normal,
        "avg_lte": summary.avg_lte,
        "avg_ste": summary.avg_ste,
        "status": "ok",
    }


def _sort_key(row: Dict):
    cost = row["total_cost"]
    failed = cost is None or math.isnan(cost)
    return (failed, 0.0 if failed else cost, row["epsilon"], row["gamma_l"], row["gamma_s"])


def run_grid(
    case: Case,
    spec: GridSearchSpec,
    base: Optional[DcaConfig] = None,
    load_scale: float = 1.0,
    n_jobs: int = 1,
) -> List[Dict]:
    """Toate combinațiile, sortate după cost total apoi după (ε, γℓ, γs)."""
    base = base or DcaConfig()
    configs = [
        base.model_copy(update={"epsilon": e, "gamma_l": gl, "gamma_s": gs})
        for e, gl, gs in itertools.product(spec.epsilons, spec.gammas_l, spec.gammas_s)
    ]
    rows = Parallel(n_jobs=n_jobs)(delayed(_run_cell)(case, cfg, load_scale) for cfg in configs)
    return sorted(rows, key=_sort_key)


def _mean_by_epsilon(rows: Sequence[Dict], epsilon: float, field: str) -> float:
    values = [r[field] for r in rows if r["epsilon"] == epsilon and r["status"] == "ok"]
    return sum(values) / len(values) if values else float("nan")


def tradeoff_direction(rows: Sequence[Dict], rel_tol: float = 1e-6) -> Optional[bool]:
    """
    True dacă la ε minim costul mediu și numărul mediu de linii în zona normală
    sunt cel puțin cele de la ε maxim. None dacă nu există două valori ε utile.
    """
    epsilons = sorted({r["epsilon"] for r in rows if r["status"] == "ok"})
    if len(epsilons) < 2:
        return None
    lo, hi = epsilons[0], epsilons[-1]
    cost_lo, cost_hi = _mean_by_epsilon(rows, lo, "total_cost"), _mean_by_epsilon(rows, hi, "total_cost")
    normal_lo, normal_hi = _mean_by_epsilon(rows, lo, "avg_normal"), _mean_by_epsilon(rows, hi, "avg_normal")
    slack = rel_tol * max(1.0, abs(cost_hi))
    return cost_lo >= cost_hi - slack and normal_lo >= normal_hi - rel_tol
