"""
Aproximarea diferență-de-convexe a cardinalității ‖max{|f| − ζ, 0}‖₀.

    φε(f; ζ) = g(f; ζ) − h(f; ζ)
    g = max{(|f| − ζ)/ε, 0},   h = max{(|f| − ζ)/ε − 1, 0}

h are punctele de frângere la f = ±(ζ + ε); acolo se alege subgradientul 0.
Toate funcțiile acceptă scalari sau vectori numpy.
"""
from typing import List, Sequence, Tuple

import numpy as np

from ..models.dispatch import DispatchPoint, PeriodObservation, Zone, ZoneCounts
from ..models.network import Case
from .formulation import operating_cost


def phi(f, zeta, eps):
    t = (np.abs(f) - zeta) / eps
    return np.clip(t, 0.0, 1.0)


def g_h_split(f, zeta, eps):
    t = (np.abs(f) - zeta) / eps
    return np.maximum(t, 0.0), np.maximum(t - 1.0, 0.0)


def h_subgradient(f, zeta, eps):
    f = np.asarray(f, dtype=float)
    kink = zeta + eps
    out = np.where(f > kink, 1.0 / eps, np.where(f < -kink, -1.0 / eps, 0.0))
    return out if out.ndim else float(out)


# -----------------------------
# 🔹 Cardinalitatea exactă
# -----------------------------
def exact_zone_sets(flows: Sequence[float], case: Case, tol: float = 0.0) -> Tuple[List[str], List[str]]:
    """E_l = {|f| > ζn}, E_s = {|f| > ζl}; depășire strictă, deci E_s ⊆ E_l."""
    e_l, e_s = [], []
    for line, f in zip(case.lines, flows):
        if abs(f) > line.zeta_n + tol:
            e_l.append(line.id)
            if abs(f) > line.zeta_l + tol:
                e_s.append(line.id)
    return e_l, e_s


def classify(flows: Sequence[float], case: Case, tol: float = 0.0) -> List[Zone]:
    zones = []
    for line, f in zip(case.lines, flows):
        if abs(f) > line.zeta_l + tol:
            zones.append(Zone.STE)
        elif abs(f) > line.zeta_n + tol:
            zones.append(Zone.LTE)
        else:
            zones.append(Zone.NORMAL)
    return zones


def zone_counts(flows: Sequence[float], case: Case, tol: float = 0.0) -> ZoneCounts:
    zones = classify(flows, case, tol)
    return ZoneCounts(
        normal=zones.count(Zone.NORMAL),
        lte=zones.count(Zone.LTE),
        ste=zones.count(Zone.STE),
    )


def reliability_penalty(flows: Sequence[float], case: Case, gamma_l: float, gamma_s: float, tol: float = 0.0) -> float:
    """F2 = γℓ|E_l| + γs|E_s|."""
    e_l, e_s = exact_zone_sets(flows, case, tol)
    return gamma_l * len(e_l) + gamma_s * len(e_s)


def exact_cmp_objective(
    point: DispatchPoint,
    obs: PeriodObservation,
    case: Case,
    cfg,
    tol: float = 0.0,
) -> float:
    return operating_cost(case, obs, point).total + reliability_penalty(
        point.flow, case, cfg.gamma_l, cfg.gamma_s, tol
    )


def approx_penalty(flows, case: Case, cfg) -> float:
    """γℓ Σ φε(f; ζn) + γs Σ φε(f; ζl)."""
    if not case.lines:
        return 0.0
    f = np.asarray(flows, dtype=float)
    zn = np.array([line.zeta_n for line in case.lines])
    zl = np.array([line.zeta_l for line in case.lines])
    return float(
        cfg.gamma_l * phi(f, zn, cfg.epsilon).sum()
        + cfg.gamma_s * phi(f, zl, cfg.epsilon).sum()
    )


def approx_cmp_objective(point: DispatchPoint, obs: PeriodObservation, case: Case, cfg) -> float:
    return operating_cost(case, obs, point).total + approx_penalty(point.flow, case, cfg)
