"""Prețuri marginale locale: dualele rândurilor `flow_balance:<bus>`."""
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..models.dispatch import PeriodObservation
from ..models.network import Case
from ..models.program import ConvexProgram, SolverSolution
from .formulation import FLOW_BALANCE, period_fragment
from .qp_solver import solve


def extract_lmp(prog: ConvexProgram, sol: SolverSolution, case: Case) -> Tuple[float, ...]:
    """$/MWh pentru fiecare bară, în ordinea din caz (dualele împărțite la dt)."""
    by_bus = {}
    for row, tag in prog.rows_tagged(FLOW_BALANCE + ":"):
        by_bus[tag.split(":", 1)[1]] = float(sol.eq_duals[row]) / case.dt
    return tuple(by_bus[bus.id] for bus in case.buses)


def regime_caps(case: Case, flows: Sequence[float], caps: Sequence[float]) -> List[float]:
    """Marginea superioară a zonei în care a ajuns fiecare flux, cel mult cea efectivă."""
    out = []
    for line, f, cap in zip(case.lines, flows, caps):
        a = abs(f)
        if a <= line.zeta_n:
            zone_cap = line.zeta_n
        elif a <= line.zeta_l:
            zone_cap = line.zeta_l
        else:
            zone_cap = line.zeta_s
        out.append(min(zone_cap, cap))
    return out


def resolve_lmp(
    case: Case,
    t: int,
    obs: PeriodObservation,
    prev_gen: Optional[Sequence[float]],
    flows: Sequence[float],
    caps: Sequence[float],
    tol: float,
    max_iters: int,
) -> Optional[Tuple[float, ...]]:
    """Re-rezolvă LP-ul F1 cu regimul zonelor fixat; None dacă nu e optim."""
    prog = period_fragment(case, t, obs, prev_gen, regime_caps(case, flows, caps)).build()
    sol = solve(prog, tol, max_iters)
    if not sol.optimal:
        return None
    return extract_lmp(prog, sol, case)


def at_scarcity(price: float, floor: float) -> bool:
    # dualele vin din solver, deci pragul are o toleranță relativă
    if not np.isfinite(floor):
        return False
    return price >= floor - 1e-6 * max(1.0, abs(floor))


def scarcity_intervals(prices: Sequence[float], floor: float) -> List[Tuple[int, int]]:
    """Secvențele maximale [start, end] (inclusiv) cu preț ≥ floor."""
    runs = []
    start = None
    for k, p in enumerate(prices):
        hit = at_scarcity(p, floor)
        if hit and start is None:
            start = k
        elif not hit and start is not None:
            runs.append((start, k - 1))
            start = None
    if start is not None:
        runs.append((start, len(prices) - 1))
    return runs


def scarcity_floor(case: Case) -> float:
    """Cel mai mic cost de nealimentare: de acolo prețul e de penurie."""
    penalties = [d.penalty for d in case.loads if d.penalty > 0]
    return float(min(penalties)) if penalties else float("inf")


def median_demand_bus(case: Case) -> str:
    """Bara cu cererea totală mediană (dintre barele cu consum)."""
    totals = {}
    for d in case.loads:
        totals[d.bus] = totals.get(d.bus, 0.0) + float(np.sum(d.demand[: case.horizon]))
    if not totals:
        return case.buses[0].id
    ranked = sorted(totals.items(), key=lambda kv: (kv[1], kv[0]))
    return ranked[(len(ranked) - 1) // 2][0]
