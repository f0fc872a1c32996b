"""
DCA pentru problema aproximată: la fiecare iterație partea concavă −h este
liniarizată în f^k, iar subproblema convexă

    F1 + (c/2)‖f − f^k‖² + γℓ Σ [g(f; ζn) − v^{k,n} f] + γs Σ [g(f; ζl) − v^{k,ℓ} f]

se rezolvă cu solverul QP. g este reformulat prin epigraf:
a ≥ (f − ζ)/ε, a ≥ (−f − ζ)/ε, a ≥ 0.
"""
import logging

import numpy as np

from ..config import ZONE_TOL
from ..models.dca import DcaConfig, DcaIteration, DcaResult, DcaStatus
from ..models.dispatch import DispatchState, PeriodObservation
from ..models.network import Case
from ..models.program import ConvexProgram
from .formulation import ProgramFragment, effective_bounds, extract_point, period_fragment
from .lmp import extract_lmp, resolve_lmp
from .qp_solver import solve
from .surrogate import approx_cmp_objective, exact_cmp_objective, h_subgradient

logger = logging.getLogger(__name__)


def build_subproblem(
    base: ProgramFragment,
    case: Case,
    cfg: DcaConfig,
    f_k: np.ndarray,
    v_n: np.ndarray,
    v_l: np.ndarray,
) -> ConvexProgram:
    frag = base.copy()
    flow = frag.variables.flow
    n_lines = len(case.lines)
    a_n = frag.extend("zone_n", n_lines, lb=0.0)
    a_l = frag.extend("zone_l", n_lines, lb=0.0)
    eps = cfg.epsilon

    for k, line in enumerate(case.lines):
        j = flow.index(k)
        for block, zeta, gamma, v in (
            (a_n, line.zeta_n, cfg.gamma_l, v_n[k]),
            (a_l, line.zeta_l, cfg.gamma_s, v_l[k]),
        ):
            a = block.index(k)
            frag.q[a] += gamma
            frag.add_ineq({j: 1.0, a: -eps}, zeta)
            frag.add_ineq({j: -1.0, a: -eps}, zeta)
            frag.q[j] -= gamma * v
        # termenul proximal
        frag.q_diag[j] += cfg.prox_c
        frag.q[j] -= cfg.prox_c * f_k[k]
        frag.constant_cost += 0.5 * cfg.prox_c * f_k[k] ** 2
    return frag.build()


def dca_solve(
    case: Case,
    t: int,
    obs: PeriodObservation,
    state: DispatchState,
    cfg: DcaConfig,
) -> DcaResult:
    caps = effective_bounds(case, state.tau_l, state.tau_s).caps
    prev_gen = state.prev_gen if case.generators else None
    base = period_fragment(case, t, obs, prev_gen, caps)
    vmap = base.variables

    # f⁰: LP-ul F1 fără penalizări de zonă, cu marginile efective
    prog0 = base.build()
    sol0 = solve(prog0, cfg.solver_tol, cfg.solver_max_iters)
    if not sol0.optimal:
        return DcaResult(
            status=DcaStatus.SUBPROBLEM_ERROR,
            point=None,
            x=None,
            initial_objective=float("nan"),
            iterations=[],
            detail=f"initial LP {sol0.status.value}",
        )

    x_k = sol0.x
    point = extract_point(x_k, vmap)
    f_k = point.flow
    obj_k = approx_cmp_objective(point, obs, case, cfg)
    initial = obj_k
    lmp = extract_lmp(prog0, sol0, case)

    zn = np.array([line.zeta_n for line in case.lines])
    zl = np.array([line.zeta_l for line in case.lines])
    iterations = []
    status = DcaStatus.MAX_ITERS
    detail = ""

    for k in range(cfg.max_iters):
        v_n = h_subgradient(f_k, zn, cfg.epsilon)
        v_l = h_subgradient(f_k, zl, cfg.epsilon)
        prog = build_subproblem(base, case, cfg, f_k, np.atleast_1d(v_n), np.atleast_1d(v_l))
        sol = solve(prog, cfg.solver_tol, cfg.solver_max_iters)
        if not sol.optimal:
            status = DcaStatus.SUBPROBLEM_ERROR
            detail = f"subproblem {k + 1}: {sol.status.value}"
            logger.warning("dca subproblem failed", extra={"period": t, "iteration": k + 1, "status": sol.status.value})
            break

        new_point = extract_point(sol.x[: vmap.n], vmap)
        obj_new = approx_cmp_objective(new_point, obs, case, cfg)
        exact = exact_cmp_objective(new_point, obs, case, cfg, ZONE_TOL)
        change = float(np.max(np.abs(new_point.flow - f_k))) if f_k.size else 0.0
        iterations.append(DcaIteration(approx_objective=obj_new, exact_objective=exact, flow_change=change))
        logger.debug(
            "dca iteration",
            extra={
                "period": t,
                "iteration": k + 1,
                "approx_objective": obj_new,
                "exact_objective": exact,
                "flow_change": change,
            },
        )

        x_k, point, f_k = sol.x[: vmap.n], new_point, new_point.flow
        lmp = extract_lmp(prog, sol, case)
        done = abs(obj_new - obj_k) <= cfg.tol_obj * max(1.0, abs(obj_new)) or change <= cfg.tol_x
        obj_k = obj_new
        if done:
            status = DcaStatus.CONVERGED
            break

    if cfg.lmp_source == "resolve":
        resolved = resolve_lmp(
            case, t, obs, prev_gen, point.flow, caps, cfg.solver_tol, cfg.solver_max_iters
        )
        if resolved is not None:
            lmp = resolved
        else:
            logger.warning("lmp re-solve failed, keeping subproblem duals", extra={"period": t})

    return DcaResult(
        status=status,
        point=point,
        x=tuple(float(v) for v in x_k),
        initial_objective=initial,
        iterations=iterations,
        lmp=lmp,
        detail=detail,
    )
