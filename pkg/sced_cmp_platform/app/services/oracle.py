"""
Oracol prin enumerare pentru problema CMP exactă pe rețele mici.

Pentru fiecare din cele 3^|L| atribuiri de zone se rezolvă LP-ul F1 cu
|f| ≤ pragul superior al zonei atribuite și se adaugă penalizarea
γℓ·(#lte + #ste) + γs·#ste. Un flux care ajunge mai jos decât zona
atribuită e penalizat prea mult, dar atribuirea "corectă" îl acoperă
cu penalizarea exactă, deci minimul peste atribuiri este optimul exact.
"""
import itertools
import logging
from typing import Optional, Sequence, Tuple

from joblib import Parallel, delayed

from ..config import ORACLE_MAX_LINES
from ..errors import EnumerationBudgetError
from ..models.dca import DcaConfig
from ..models.dispatch import DispatchState, PeriodObservation, Zone
from ..models.network import Case
from ..models.oracle import OracleResult, ZoneAssignment
from .formulation import effective_bounds, extract_point, period_fragment
from .qp_solver import solve
from .surrogate import classify

logger = logging.getLogger(__name__)

_ZONES = (Zone.NORMAL, Zone.LTE, Zone.STE)


def _zone_cap(line, zone: Zone) -> float:
    return {Zone.NORMAL: line.zeta_n, Zone.LTE: line.zeta_l, Zone.STE: line.zeta_s}[zone]


def _evaluate(case, t, obs, prev_gen, eff_caps, zones, gamma_l, gamma_s, tol, max_iters):
    caps = [min(_zone_cap(line, z), c) for line, z, c in zip(case.lines, zones, eff_caps)]
    frag = period_fragment(case, t, obs, prev_gen, caps)
    sol = solve(frag.build(), tol, max_iters)
    if not sol.optimal:
        return None
    assignment = ZoneAssignment(zones=tuple(zones))
    n_l, n_s = assignment.counts()
    flows = extract_point(sol.x, frag.variables).flow
    return sol.objective + gamma_l * n_l + gamma_s * n_s, tuple(float(f) for f in flows), assignment


def oracle_solve(
    case: Case,
    t: int,
    obs: PeriodObservation,
    state: DispatchState,
    cfg: Optional[DcaConfig] = None,
    n_jobs: int = 1,
    budget: int = ORACLE_MAX_LINES,
) -> OracleResult:
    cfg = cfg or DcaConfig()
    n_lines = len(case.lines)
    if n_lines > budget:
        raise EnumerationBudgetError(n_lines, budget)

    eff_caps = effective_bounds(case, state.tau_l, state.tau_s).caps
    prev_gen = state.prev_gen if case.generators else None
    tol, max_iters = cfg.solver_tol, cfg.solver_max_iters

    assignments = list(itertools.product(_ZONES, repeat=n_lines))
    results = Parallel(n_jobs=n_jobs)(
        delayed(_evaluate)(
            case, t, obs, prev_gen, eff_caps, zones, cfg.gamma_l, cfg.gamma_s, tol, max_iters
        )
        for zones in assignments
    )

    feasible = [r for r in results if r is not None]
    if not feasible:
        raise ValueError(f"oracle: no feasible zone assignment in period {t}")
    # ordinea enumerării rupe egalitățile, deci rezultatul e determinist
    best = min(feasible, key=lambda r: r[0])
    logger.info(
        "oracle finished",
        extra={"period": t, "evaluated": len(results), "infeasible": len(results) - len(feasible)},
    )
    return OracleResult(
        objective=best[0],
        flows=best[1],
        assignment=best[2],
        evaluated=len(results),
        infeasible=len(results) - len(feasible),
    )


def relative_gap(dca_objective: float, oracle_objective: float) -> float:
    return (dca_objective - oracle_objective) / max(1.0, abs(oracle_objective))


def assignment_of(flows: Sequence[float], case: Case) -> Tuple[Zone, ...]:
    return tuple(classify(flows, case))
