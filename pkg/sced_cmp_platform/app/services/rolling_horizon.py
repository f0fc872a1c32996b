"""
Simularea pe orizont rulant: câte o problemă pe perioadă, starea s_t
(generarea anterioară, fluxurile, contoarele τℓ/τs) trece mai departe.
"""
import logging
from typing import List, Literal, Optional, Sequence, Tuple

import numpy as np

from ..config import ZONE_TOL
from ..errors import PeriodInfeasibleError
from ..models.dca import DcaConfig, DcaStatus
from ..models.dispatch import (
    DispatchPoint,
    DispatchState,
    PeriodObservation,
    PeriodReport,
    SimulationResult,
    SimulationSummary,
)
from ..models.network import Case
from .case_tools import scale_loads
from .dca import dca_solve
from .formulation import base_variable_map, extract_point, observe, operating_cost, strict_model
from .lmp import at_scarcity, extract_lmp, scarcity_floor
from .qp_solver import solve
from .surrogate import zone_counts

logger = logging.getLogger(__name__)

Mode = Literal["cmp", "strict"]


# -----------------------------
# 🔹 Starea
# -----------------------------
def initial_state(case: Case, cfg: Optional[DcaConfig] = None) -> DispatchState:
    """s₀: modelul strict la t = 0 fără rampă, contoarele pe 0."""
    cfg = cfg or DcaConfig()
    obs = observe(case, 0)
    point, _ = _solve_strict(case, 0, obs, None, cfg)
    n_lines = len(case.lines)
    return DispatchState(
        prev_gen=_clip_gen(case, point.gen),
        prev_flow=tuple(float(f) for f in point.flow),
        tau_l=(0,) * n_lines,
        tau_s=(0,) * n_lines,
    )


def update_tau(
    state: DispatchState,
    flows: Sequence[float],
    case: Case,
    gen: Optional[Sequence[float]] = None,
    tol: float = ZONE_TOL,
) -> DispatchState:
    """τℓ ← 0 dacă |f| ≤ ζn altfel τℓ + 1 (saturat la T_l); τs analog cu ζl."""
    tau_l, tau_s = [], []
    for k, line in enumerate(case.lines):
        a = abs(flows[k])
        tau_l.append(0 if a <= line.zeta_n + tol else min(state.tau_l[k] + 1, case.t_l))
        tau_s.append(0 if a <= line.zeta_l + tol else min(state.tau_s[k] + 1, case.t_s))
    return DispatchState(
        prev_gen=state.prev_gen if gen is None else _clip_gen(case, gen),
        prev_flow=tuple(float(f) for f in flows),
        tau_l=tuple(tau_l),
        tau_s=tuple(tau_s),
    )


def _clip_gen(case: Case, gen) -> Tuple[float, ...]:
    lo = np.array([g.p_min for g in case.generators])
    hi = np.array([g.p_max for g in case.generators])
    return tuple(float(v) for v in np.clip(np.asarray(gen, dtype=float), lo, hi))


# -----------------------------
# 🔹 O perioadă
# -----------------------------
def _solve_strict(case, t, obs, prev_gen, cfg) -> Tuple[DispatchPoint, Tuple[float, ...]]:
    prog = strict_model(case, t, obs, prev_gen)
    sol = solve(prog, cfg.solver_tol, cfg.solver_max_iters)
    if not sol.optimal:
        raise PeriodInfeasibleError(t, f"strict model {sol.status.value}")
    return extract_point(sol.x, base_variable_map(case)), extract_lmp(prog, sol, case)


def _solve_cmp(case, t, obs, state, cfg):
    result = dca_solve(case, t, obs, state, cfg)
    if result.point is None:
        raise PeriodInfeasibleError(t, f"cmp model: {result.detail}")
    if result.status == DcaStatus.SUBPROBLEM_ERROR:
        logger.warning(
            "dca fell back to last accepted point",
            extra={"period": t, "detail": result.detail},
        )
    return result.point, result.lmp, len(result.iterations), result.status.value


def _report(case: Case, obs: PeriodObservation, point: DispatchPoint, lmp, iters: int, status: str) -> PeriodReport:
    cost = operating_cost(case, obs, point)
    return PeriodReport(
        period=obs.period,
        operating_cost=cost.total,
        generation_cost=cost.generation,
        curtailment_cost=cost.curtailment,
        shed_cost=cost.shed,
        shed_energy=cost.shed_energy,
        curtailed_energy=cost.curtailed_energy,
        zones=zone_counts(point.flow, case, ZONE_TOL),
        lmp=tuple(lmp),
        flows=tuple(float(f) for f in point.flow),
        dca_iterations=iters,
        status=status,
    )


# -----------------------------
# 🔹 Simularea completă
# -----------------------------
def simulate(
    case: Case,
    mode: Mode,
    cfg: Optional[DcaConfig] = None,
    load_scale: float = 1.0,
) -> SimulationResult:
    if mode not in ("cmp", "strict"):
        raise ValueError(f"unknown mode {mode!r}")
    cfg = cfg or DcaConfig()
    case = scale_loads(case, load_scale)
    state = initial_state(case, cfg)
    reports: List[PeriodReport] = []

    for t in range(case.horizon):
        obs = observe(case, t)
        prev_gen = state.prev_gen if case.generators else None
        if mode == "strict":
            point, lmp = _solve_strict(case, t, obs, prev_gen, cfg)
            iters, status = 0, "optimal"
        else:
            point, lmp, iters, status = _solve_cmp(case, t, obs, state, cfg)
        report = _report(case, obs, point, lmp, iters, status)
        reports.append(report)
        logger.info(
            "period solved",
            extra={
                "mode": mode,
                "period": t,
                "operating_cost": report.operating_cost,
                "zones": report.zones.triple(),
                "dca_iterations": iters,
            },
        )
        state = update_tau(state, point.flow, case, gen=point.gen)

    return SimulationResult(
        bus_ids=tuple(case.bus_ids()),
        line_ids=tuple(case.line_ids()),
        reports=reports,
        summary=summarize(case, mode, reports),
    )


def summarize(case: Case, mode: Mode, reports: Sequence[PeriodReport]) -> SimulationSummary:
    n = max(len(reports), 1)
    floor = scarcity_floor(case)
    return SimulationSummary(
        mode=mode,
        periods=len(reports),
        total_cost=float(sum(r.operating_cost for r in reports)),
        total_shed=float(sum(r.shed_energy for r in reports)),
        avg_normal=sum(r.zones.normal for r in reports) / n,
        avg_lte=sum(r.zones.lte for r in reports) / n,
        avg_ste=sum(r.zones.ste for r in reports) / n,
        failed_periods=sum(1 for r in reports if r.status == DcaStatus.SUBPROBLEM_ERROR.value),
        scarcity_periods=sum(1 for r in reports if r.lmp and at_scarcity(max(r.lmp), floor)),
    )
