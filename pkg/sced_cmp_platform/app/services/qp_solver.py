"""
Solver QP/LP dens.

Programele liniare (Q = 0) merg la simplexul dual HiGHS din scipy. Restul
trec printr-un punct interior primal-dual (predictor-corector Mehrotra) pe
forma internă:

    Qx + q − Aᵀy + Cᵀz = 0,   Ax = b,   Cx + s = d,   s∘z = μ,  s, z > 0

unde C = [G; I_ub; −I_lb], după eliminarea variabilelor fixate și scalarea
rândurilor și a costurilor. Semnul lui y este cel de preț umbră:
y = ∂obiectiv / ∂b. Reziduurile KKT raportate sunt absolute, calculate pe
programul original.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import LinAlgError, lstsq, lu_factor, lu_solve
from scipy.optimize import linprog

from ..config import (
    INFEASIBLE_FLOOR,
    INFEASIBLE_STALL_ITERS,
    SOLVER_MAX_ITERS,
    SOLVER_TOL,
)
from ..models.program import ConvexProgram, KktResiduals, SolverSolution, SolverStatus

logger = logging.getLogger(__name__)

_STEP_FRACTION = 0.995
_REGULARIZATION = 1e-11
_START_REGULARIZATION = 1e-8
_UNBOUNDED_NORM = 1e12
_POLISH_FROM = 1e-6
_SHORT_STEP = 0.1
_HIGHS_MIN_TOL = 1e-10

_HIGHS_STATUS = {
    0: SolverStatus.OPTIMAL,
    1: SolverStatus.ITERATION_LIMIT,
    2: SolverStatus.INFEASIBLE,
    3: SolverStatus.UNBOUNDED,
    4: SolverStatus.NUMERICAL_FAILURE,
}


def solve(
    prog: ConvexProgram,
    tol: float = SOLVER_TOL,
    max_iters: int = SOLVER_MAX_ITERS,
) -> SolverSolution:
    """
    Optimal doar dacă reziduurile absolute (primal, dual, complementaritate)
    sunt ≤ tol. `max_iters` limitează iterațiile de punct interior; simplexul
    folosește limita proprie HiGHS.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if prog.is_linear:
        return _solve_simplex(prog, tol)
    return _solve_interior(prog, tol, max_iters)


# -----------------------------
# 🔹 LP: simplex dual HiGHS
# -----------------------------
def _solve_simplex(prog: ConvexProgram, tol: float) -> SolverSolution:
    feas_tol = max(0.1 * tol, _HIGHS_MIN_TOL)
    res = linprog(
        c=prog.q,
        A_ub=prog.G if prog.n_ineq else None,
        b_ub=prog.h if prog.n_ineq else None,
        A_eq=prog.A_eq if prog.n_eq else None,
        b_eq=prog.b_eq if prog.n_eq else None,
        bounds=[(_finite_or_none(lo), _finite_or_none(hi)) for lo, hi in zip(prog.lb, prog.ub)],
        method="highs-ds",
        options={"primal_feasibility_tolerance": feas_tol, "dual_feasibility_tolerance": feas_tol},
    )
    status = _HIGHS_STATUS.get(res.status, SolverStatus.NUMERICAL_FAILURE)
    iters = int(res.get("nit") or 0)
    n = prog.n
    if status != SolverStatus.OPTIMAL or res.x is None:
        x = np.clip(np.zeros(n), prog.lb, prog.ub)
        zeros = np.zeros(n)
        return _assemble(prog, status, x, np.zeros(prog.n_eq), np.zeros(prog.n_ineq), zeros, zeros, iters)

    x = np.asarray(res.x, dtype=float)
    # marginalele scipy sunt ∂obiectiv/∂rhs; cele ale inegalităților au semn ≤ 0
    y = _marginals(res, "eqlin", prog.n_eq)
    ineq = -_marginals(res, "ineqlin", prog.n_ineq)
    # dualele marginilor: costurile reduse, pe semne
    reduced = prog.q - prog.A_eq.T @ y + prog.G.T @ ineq
    lower = np.maximum(reduced, 0.0)
    upper = np.maximum(-reduced, 0.0)
    return _assemble(prog, status, x, y, ineq, lower, upper, iters)


def _marginals(res, name: str, size: int) -> np.ndarray:
    block = res.get(name)
    values = None if block is None else block.get("marginals")
    if values is None:
        return np.zeros(size)
    values = np.asarray(values, dtype=float).reshape(-1)
    return values.copy() if values.size == size else np.zeros(size)


def _finite_or_none(v: float) -> Optional[float]:
    return float(v) if np.isfinite(v) else None


# -----------------------------
# 🔹 QP: punct interior
# -----------------------------
@dataclass
class _Reduced:
    """Problema scalată, fără variabilele fixate, + blocurile inegalităților."""

    free: np.ndarray
    fixed: np.ndarray
    x_fixed: np.ndarray
    Q: np.ndarray
    q: np.ndarray
    A: np.ndarray
    b: np.ndarray
    G: np.ndarray
    h: np.ndarray
    iu: np.ndarray
    ub: np.ndarray
    il: np.ndarray
    lb: np.ndarray
    row_a: np.ndarray
    row_g: np.ndarray
    cost_scale: float

    @property
    def n(self) -> int:
        return self.Q.shape[0]

    @property
    def m_ineq(self) -> int:
        return self.G.shape[0] + self.iu.size + self.il.size

    def c_mul(self, x: np.ndarray) -> np.ndarray:
        return np.concatenate([self.G @ x, x[self.iu], -x[self.il]])

    def ct_mul(self, v: np.ndarray) -> np.ndarray:
        k, u = self.G.shape[0], self.iu.size
        out = self.G.T @ v[:k]
        np.add.at(out, self.iu, v[k:k + u])
        np.subtract.at(out, self.il, v[k + u:])
        return out

    def ct_w_c(self, w: np.ndarray) -> np.ndarray:
        k, u = self.G.shape[0], self.iu.size
        out = (self.G.T * w[:k]) @ self.G
        diag = np.zeros(self.n)
        np.add.at(diag, self.iu, w[k:k + u])
        np.add.at(diag, self.il, w[k + u:])
        out[np.diag_indices(self.n)] += diag
        return out

    def c_dense(self) -> np.ndarray:
        eye = np.eye(self.n)
        return np.vstack([self.G, eye[self.iu], -eye[self.il]])

    def d(self) -> np.ndarray:
        return np.concatenate([self.h, self.ub, -self.lb])


def _row_scale(M: np.ndarray) -> np.ndarray:
    if M.shape[0] == 0 or M.shape[1] == 0:
        return np.ones(M.shape[0])
    norms = np.max(np.abs(M), axis=1)
    return np.where(norms > 0.0, 1.0 / np.where(norms > 0.0, norms, 1.0), 1.0)


def _reduce(prog: ConvexProgram) -> _Reduced:
    fixed_mask = np.isfinite(prog.lb) & np.isfinite(prog.ub) & (
        prog.ub - prog.lb <= 1e-12 * np.maximum(1.0, np.abs(prog.lb))
    )
    free = np.flatnonzero(~fixed_mask)
    fixed = np.flatnonzero(fixed_mask)
    x_fixed = prog.lb[fixed]

    Q = prog.Q[np.ix_(free, free)]
    q = prog.q[free] + prog.Q[np.ix_(free, fixed)] @ x_fixed
    A = prog.A_eq[:, free]
    b = prog.b_eq - prog.A_eq[:, fixed] @ x_fixed
    G = prog.G[:, free]
    h = prog.h - prog.G[:, fixed] @ x_fixed

    # rânduri la normă ∞ unitară, costuri la ordinul 1
    row_a, row_g = _row_scale(A), _row_scale(G)
    A, b = A * row_a[:, None], b * row_a
    G, h = G * row_g[:, None], h * row_g
    cost_scale = max(1.0, _inf_norm(q), _inf_norm(Q))

    lb, ub = prog.lb[free], prog.ub[free]
    iu = np.flatnonzero(np.isfinite(ub))
    il = np.flatnonzero(np.isfinite(lb))
    return _Reduced(
        free, fixed, x_fixed, Q / cost_scale, q / cost_scale, A, b, G, h,
        iu, ub[iu], il, lb[il], row_a, row_g, cost_scale,
    )


def _starting_point(red: _Reduced):
    """x din cele mai mici pătrate pe Cx ≈ d, Ax = b; s și z deplasate și echilibrate."""
    n, m_eq, m = red.n, red.A.shape[0], red.m_ineq
    d = red.d()
    H0 = red.Q + red.ct_w_c(np.ones(m))
    K0 = np.block([
        [H0 + _START_REGULARIZATION * np.eye(n), red.A.T],
        [red.A, -_START_REGULARIZATION * np.eye(m_eq)],
    ])
    try:
        factor = lu_factor(K0, check_finite=True)
        primal = lu_solve(factor, np.concatenate([red.ct_mul(d), red.b]))
        dual = lu_solve(factor, np.concatenate([-red.q, np.zeros(m_eq)]))
    except (LinAlgError, ValueError):
        primal = dual = np.zeros(n + m_eq)
    if not (np.all(np.isfinite(primal)) and np.all(np.isfinite(dual))):
        primal = dual = np.zeros(n + m_eq)

    x = primal[:n]
    y = -dual[n:]
    s = d - red.c_mul(x)
    z = red.c_mul(dual[:n])
    if m:
        s = s + max(-1.5 * float(s.min()), 0.0)
        z = z + max(-1.5 * float(z.min()), 0.0)
        gap = float(s @ z)
        if gap <= 0.0:
            s, z = s + 1.0, z + 1.0
        else:
            s, z = s + 0.5 * gap / z.sum(), z + 0.5 * gap / s.sum()
    return x, y, z, s


def _max_step(v: np.ndarray, dv: np.ndarray) -> float:
    neg = dv < 0
    if not neg.any():
        return 1.0
    return float(min(1.0, np.min(-v[neg] / dv[neg])))


def _solve_interior(prog: ConvexProgram, tol: float, max_iters: int) -> SolverSolution:
    red = _reduce(prog)
    n, m_eq, m_in = red.n, red.A.shape[0], red.m_ineq

    if n == 0:
        sol = _finish(prog, red, np.zeros(0), np.zeros(m_eq), np.zeros(m_in), SolverStatus.OPTIMAL, 0)
        if sol.kkt_residuals.worst() > tol:
            sol = sol.model_copy(update={"status": SolverStatus.INFEASIBLE})
        return sol

    d = red.d()
    scale_p = 1.0 + max(_inf_norm(red.b), _inf_norm(d))
    scale_d = 1.0 + _inf_norm(red.q)
    check_from = max(tol, _POLISH_FROM)

    x, y, z, s = _starting_point(red)
    status = SolverStatus.ITERATION_LIMIT
    stall = 0
    prev_pres = np.inf
    iters = 0

    for iters in range(max_iters + 1):
        r_d = red.Q @ x + red.q - red.A.T @ y + red.ct_mul(z)
        r_p = red.A @ x - red.b
        r_i = red.c_mul(x) + s - d
        mu = float(s @ z) / m_in if m_in else 0.0

        pres = max(_inf_norm(r_p), _inf_norm(r_i))
        dres = _inf_norm(r_d)
        obj = 0.5 * x @ red.Q @ x + red.q @ x
        comp = float(np.max(s * z)) if m_in else 0.0
        if not np.all(np.isfinite([pres, dres, comp])):
            status = SolverStatus.NUMERICAL_FAILURE
            break
        progress = max(pres / scale_p, dres / scale_d, comp / (1.0 + abs(obj)))
        if progress <= check_from:
            done = _converged(prog, red, x, y, z, s, tol, iters)
            if done is not None:
                return done
        if _inf_norm(x) > _UNBOUNDED_NORM:
            status = SolverStatus.UNBOUNDED
            break

        # reziduul primal blocat deasupra pragului + rază Farkas -> infezabil
        if pres > INFEASIBLE_FLOOR * scale_p and pres > 0.9 * prev_pres:
            stall += 1
            if stall >= INFEASIBLE_STALL_ITERS and _farkas_ray(red, y, z):
                status = SolverStatus.INFEASIBLE
                break
        else:
            stall = 0
        prev_pres = pres

        if iters == max_iters:
            break

        w = z / s if m_in else np.zeros(0)
        H = red.Q + red.ct_w_c(w)
        K = np.block([
            [H + _REGULARIZATION * np.eye(n), red.A.T],
            [red.A, -_REGULARIZATION * np.eye(m_eq)],
        ])
        try:
            factor = lu_factor(K, check_finite=True)
        except (LinAlgError, ValueError):
            status = SolverStatus.NUMERICAL_FAILURE
            break

        def newton(r_c: np.ndarray):
            # dz = W C dx + S⁻¹(Z r_i − r_c);  ds = −r_i − C dx
            corr = (z * r_i - r_c) / s if m_in else np.zeros(0)
            rhs = np.concatenate([-r_d - red.ct_mul(corr), -r_p])
            sol = lu_solve(factor, rhs)
            # un pas de rafinare față de sistemul neregularizat
            resid = rhs - _kkt_apply(H, red.A, sol, n)
            sol = sol + lu_solve(factor, resid)
            dx, dy = sol[:n], -sol[n:]
            c_dx = red.c_mul(dx)
            return dx, dy, w * c_dx + corr, -r_i - c_dx

        def step_length(direction) -> float:
            _, _, dz, ds = direction
            return min(1.0, _STEP_FRACTION * min(_max_step(s, ds), _max_step(z, dz)))

        # predictor
        affine = newton(s * z)
        if m_in:
            _, _, dz_a, ds_a = affine
            alpha_a = min(_max_step(s, ds_a), _max_step(z, dz_a))
            mu_aff = float((s + alpha_a * ds_a) @ (z + alpha_a * dz_a)) / m_in
            sigma = min(1.0, (mu_aff / mu) ** 3) if mu > 0 else 0.0
            if alpha_a < _SHORT_STEP:
                # pas afin scurt: doar centrare, fără termenul de ordinul doi
                direction = newton(s * z - mu)
            else:
                direction = newton(s * z + ds_a * dz_a - sigma * mu)
                alpha = step_length(direction)
                if alpha < 0.5 * alpha_a:
                    centered = newton(s * z - sigma * mu)
                    if step_length(centered) > alpha:
                        direction = centered
            alpha = step_length(direction)
        else:
            direction, alpha = affine, 1.0

        dx, dy, dz, ds = direction
        if not np.all(np.isfinite(dx)):
            status = SolverStatus.NUMERICAL_FAILURE
            break
        x = x + alpha * dx
        y = y + alpha * dy
        if m_in:
            z = z + alpha * dz
            s = s + alpha * ds

    return _finish(prog, red, x, y, z, status, iters)


def _converged(prog, red, x, y, z, s, tol, iters) -> Optional[SolverSolution]:
    sol = _finish(prog, red, x, y, z, SolverStatus.OPTIMAL, iters)
    if sol.kkt_residuals.worst() <= tol:
        return sol
    polished = _polish(red, x, y, z, s)
    if polished is None:
        return None
    sol = _finish(prog, red, *polished, SolverStatus.OPTIMAL, iters)
    return sol if sol.kkt_residuals.worst() <= tol else None


def _polish(red: _Reduced, x, y, z, s) -> Optional[Tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Rezolvă sistemul KKT pe mulțimea activă ghicită (z > s), cu corecție de normă minimă."""
    active = z > s
    C = red.c_dense()[active]
    n, m_eq, k = red.n, red.A.shape[0], int(active.sum())
    size = n + m_eq + k
    M = np.zeros((size, size))
    M[:n, :n] = red.Q
    M[:n, n:n + m_eq] = -red.A.T
    M[:n, n + m_eq:] = C.T
    M[n:n + m_eq, :n] = red.A
    M[n + m_eq:, :n] = C
    rhs = np.concatenate([-red.q, red.b, red.d()[active]])
    v = np.concatenate([x, y, z[active]])
    try:
        for _ in range(2):
            v = v + lstsq(M, rhs - M @ v, check_finite=False)[0]
    except (LinAlgError, ValueError):
        return None
    if not np.all(np.isfinite(v)):
        return None
    z_new = np.zeros_like(z)
    z_new[active] = v[n + m_eq:]
    return v[:n], v[n:n + m_eq], z_new


def _farkas_ray(red: _Reduced, y: np.ndarray, z: np.ndarray) -> bool:
    """(y, z) normalizat aproape satisface Cᵀz = Aᵀy cu dᵀz − bᵀy < 0."""
    scale = max(_inf_norm(y), _inf_norm(z))
    if scale == 0.0:
        return False
    y_hat, z_hat = y / scale, z / scale
    ray = _inf_norm(red.ct_mul(z_hat) - red.A.T @ y_hat)
    gap = float(red.d() @ z_hat - red.b @ y_hat)
    return ray <= INFEASIBLE_FLOOR and gap < -INFEASIBLE_FLOOR


def _kkt_apply(H: np.ndarray, A: np.ndarray, sol: np.ndarray, n: int) -> np.ndarray:
    top = H @ sol[:n] + A.T @ sol[n:]
    return np.concatenate([top, A @ sol[:n]])


def _finish(prog, red, x_red, y_s, z_s, status, iters) -> SolverSolution:
    """Readuce punctul intern la variabilele și unitățile programului original."""
    x = np.zeros(prog.n)
    x[red.free] = x_red
    x[red.fixed] = red.x_fixed

    k, u = red.G.shape[0], red.iu.size
    y = red.cost_scale * red.row_a * y_s
    ineq = red.cost_scale * red.row_g * z_s[:k]
    upper = np.zeros(prog.n)
    lower = np.zeros(prog.n)
    upper[red.free[red.iu]] = red.cost_scale * z_s[k:k + u]
    lower[red.free[red.il]] = red.cost_scale * z_s[k + u:]

    # dualele marginilor pentru variabilele eliminate vin din staționaritate
    if red.fixed.size:
        stat = prog.Q @ x + prog.q - prog.A_eq.T @ y + prog.G.T @ ineq
        r = stat[red.fixed]
        upper[red.fixed] = np.maximum(-r, 0.0)
        lower[red.fixed] = np.maximum(r, 0.0)
    return _assemble(prog, status, x, y, ineq, lower, upper, iters)


# -----------------------------
# 🔹 Soluția comună
# -----------------------------
def kkt_residuals(prog, x, y, ineq, lower, upper) -> KktResiduals:
    slack = prog.h - prog.G @ x
    primal = max(
        _inf_norm(prog.A_eq @ x - prog.b_eq),
        _pos_max(-slack),
        _pos_max(prog.lb - x),
        _pos_max(x - prog.ub),
    )
    stationarity = prog.Q @ x + prog.q - prog.A_eq.T @ y + prog.G.T @ ineq + upper - lower
    dual = max(_inf_norm(stationarity), _pos_max(-ineq), _pos_max(-lower), _pos_max(-upper))
    complementarity = max(
        _inf_norm(ineq * slack),
        _inf_norm(_finite_product(lower, x - prog.lb)),
        _inf_norm(_finite_product(upper, prog.ub - x)),
    )
    return KktResiduals(primal=primal, dual=dual, complementarity=complementarity)


def _assemble(prog, status, x, y, ineq, lower, upper, iters) -> SolverSolution:
    residuals = kkt_residuals(prog, x, y, ineq, lower, upper)
    objective = prog.objective_at(x)
    dual_objective = float(
        -0.5 * x @ prog.Q @ x
        + prog.b_eq @ y
        - prog.h @ ineq
        - _finite_dot(prog.ub, upper)
        + _finite_dot(prog.lb, lower)
        + prog.constant_cost
    )
    if status != SolverStatus.OPTIMAL:
        logger.debug(
            "solver stopped without optimality",
            extra={"status": status.value, "iterations": iters, "kkt": residuals.model_dump()},
        )
    return SolverSolution(
        status=status,
        x=x,
        eq_duals=y,
        ineq_duals=ineq,
        lower_duals=lower,
        upper_duals=upper,
        objective=objective,
        dual_objective=dual_objective,
        kkt_residuals=residuals,
        iterations=iters,
    )


def _finite_dot(bound: np.ndarray, dual: np.ndarray) -> float:
    mask = np.isfinite(bound)
    return float(bound[mask] @ dual[mask])


def _finite_product(dual: np.ndarray, gap: np.ndarray) -> np.ndarray:
    mask = np.isfinite(gap)
    return dual[mask] * gap[mask]


def _inf_norm(v: np.ndarray) -> float:
    return float(np.max(np.abs(v))) if v.size else 0.0


def _pos_max(v: np.ndarray) -> float:
    return max(0.0, float(np.max(v))) if v.size else 0.0
