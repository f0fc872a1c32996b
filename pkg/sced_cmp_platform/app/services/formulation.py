"""
Părțile convexe ale modelului SCED: costul F1, bilanțul pe bare, fluxul DC,
marginile termice, rampele și marginile efective derivate din durate.
"""
from typing import Dict, Iterable, Optional, Sequence, Tuple

import numpy as np

from ..errors import EmptyRampIntervalError
from ..models.dispatch import (
    Block,
    CostBreakdown,
    DispatchPoint,
    EffectiveBounds,
    PeriodObservation,
    VariableMap,
)
from ..models.network import Case
from ..models.program import ConvexProgram

FLOW_BALANCE = "flow_balance"
FLOW_DEF = "flow_def"

_RAMP_SLACK = 1e-9


# -------------------------------------------------------------------------
# CONSTRUCTOR INCREMENTAL
# -------------------------------------------------------------------------
class ProgramFragment:
    """Fragment de ConvexProgram construit pe blocuri; `build()` îl îngheață."""

    def __init__(self, variables: VariableMap):
        n = variables.n
        self.variables = variables
        self.q = np.zeros(n)
        self.q_diag = np.zeros(n)
        self.constant_cost = 0.0
        self.lb = np.full(n, -np.inf)
        self.ub = np.full(n, np.inf)
        self._eq: list = []
        self._ineq: list = []

    def copy(self) -> "ProgramFragment":
        other = ProgramFragment(self.variables)
        other.q = self.q.copy()
        other.q_diag = self.q_diag.copy()
        other.constant_cost = self.constant_cost
        other.lb = self.lb.copy()
        other.ub = self.ub.copy()
        other._eq = list(self._eq)
        other._ineq = list(self._ineq)
        return other

    def extend(self, name: str, size: int, lb: float = -np.inf, ub: float = np.inf) -> Block:
        start = self.variables.n
        block = Block(start=start, stop=start + size)
        self.variables = self.variables.model_copy(update={name: block, "n": block.stop})
        self.q = np.concatenate([self.q, np.zeros(size)])
        self.q_diag = np.concatenate([self.q_diag, np.zeros(size)])
        self.lb = np.concatenate([self.lb, np.full(size, lb)])
        self.ub = np.concatenate([self.ub, np.full(size, ub)])
        return block

    def add_eq(self, coeffs: Dict[int, float], rhs: float, tag: Optional[str] = None) -> None:
        self._eq.append((coeffs, float(rhs), tag))

    def add_ineq(self, coeffs: Dict[int, float], rhs: float) -> None:
        self._ineq.append((coeffs, float(rhs)))

    @property
    def n_eq(self) -> int:
        return len(self._eq)

    def eq_rows(self) -> Iterable[Tuple[Dict[int, float], float, Optional[str]]]:
        return iter(self._eq)

    def build(self) -> ConvexProgram:
        n = self.variables.n
        A = np.zeros((len(self._eq), n))
        b = np.zeros(len(self._eq))
        for k, (coeffs, rhs, _) in enumerate(self._eq):
            for j, v in coeffs.items():
                A[k, j] += v
            b[k] = rhs
        G = np.zeros((len(self._ineq), n))
        h = np.zeros(len(self._ineq))
        for k, (coeffs, rhs) in enumerate(self._ineq):
            for j, v in coeffs.items():
                G[k, j] += v
            h[k] = rhs
        return ConvexProgram(
            n=n,
            Q=np.diag(self.q_diag),
            q=self.q.copy(),
            constant_cost=self.constant_cost,
            A_eq=A,
            b_eq=b,
            G=G,
            h=h,
            lb=self.lb.copy(),
            ub=self.ub.copy(),
            tags=tuple(tag for _, _, tag in self._eq),
        )


# -------------------------------------------------------------------------
# OBSERVAȚII + INDEXARE
# -------------------------------------------------------------------------
def observe(case: Case, t: int) -> PeriodObservation:
    if not 0 <= t < case.horizon:
        raise ValueError(f"period {t} outside horizon [0, {case.horizon})")
    return PeriodObservation(
        period=t,
        availability=tuple(r.availability[t] for r in case.renewables),
        demand=tuple(d.demand[t] for d in case.loads),
    )


def base_variable_map(case: Case) -> VariableMap:
    sizes = (
        ("gen", len(case.generators)),
        ("renewable", len(case.renewables)),
        ("load", len(case.loads)),
        ("flow", len(case.lines)),
        ("theta", len(case.buses)),
        ("curtail", len(case.renewables)),
        ("shed", len(case.loads)),
    )
    blocks = {}
    cursor = 0
    for name, size in sizes:
        blocks[name] = Block(start=cursor, stop=cursor + size)
        cursor += size
    return VariableMap(n=cursor, **blocks)


def extract_point(x: np.ndarray, vmap: VariableMap) -> DispatchPoint:
    x = np.asarray(x, dtype=float)
    return DispatchPoint(
        gen=x[vmap.gen.slice].copy(),
        renewable=x[vmap.renewable.slice].copy(),
        load=x[vmap.load.slice].copy(),
        flow=x[vmap.flow.slice].copy(),
        theta=x[vmap.theta.slice].copy(),
    )


# -------------------------------------------------------------------------
# MODELUL DE BAZĂ
# -------------------------------------------------------------------------
def build_base(case: Case, t: int, obs: PeriodObservation) -> Tuple[ProgramFragment, VariableMap]:
    """Cost F1 (cu epigraf pentru (·)+), bilanț, flux DC, |f| ≤ ζs, margini."""
    vmap = base_variable_map(case)
    frag = ProgramFragment(vmap)
    dt = case.dt
    bus_pos = case.bus_index()

    # cost + margini pe generare / regenerabile / consum
    for k, g in enumerate(case.generators):
        j = vmap.gen.index(k)
        frag.q[j] = dt * g.cost
        frag.lb[j], frag.ub[j] = g.p_min, g.p_max
    for k, r in enumerate(case.renewables):
        j, u = vmap.renewable.index(k), vmap.curtail.index(k)
        xi = obs.availability[k]
        frag.lb[j], frag.ub[j] = 0.0, xi
        frag.q[u] = dt * r.penalty
        frag.lb[u] = 0.0
        # u ≥ ξ − p
        frag.add_ineq({u: -1.0, j: -1.0}, -xi)
    for k, d in enumerate(case.loads):
        j, v = vmap.load.index(k), vmap.shed.index(k)
        xi = obs.demand[k]
        frag.lb[j], frag.ub[j] = 0.0, xi
        frag.q[v] = dt * d.penalty
        frag.lb[v] = 0.0
        frag.add_ineq({v: -1.0, j: -1.0}, -xi)

    # bilanț pe bare (rândurile folosite la LMP)
    balance = [dict() for _ in case.buses]
    for k, g in enumerate(case.generators):
        _acc(balance[bus_pos[g.bus]], vmap.gen.index(k), 1.0)
    for k, r in enumerate(case.renewables):
        _acc(balance[bus_pos[r.bus]], vmap.renewable.index(k), 1.0)
    for k, d in enumerate(case.loads):
        _acc(balance[bus_pos[d.bus]], vmap.load.index(k), -1.0)
    for k, line in enumerate(case.lines):
        j = vmap.flow.index(k)
        _acc(balance[bus_pos[line.from_bus]], j, -1.0)
        _acc(balance[bus_pos[line.to_bus]], j, 1.0)
    for i, bus in enumerate(case.buses):
        frag.add_eq(balance[i], 0.0, tag=f"{FLOW_BALANCE}:{bus.id}")

    # f = base·(θi − θj)/X
    for k, line in enumerate(case.lines):
        coef = case.base_mva / line.x
        frag.add_eq(
            {
                vmap.flow.index(k): 1.0,
                vmap.theta.index(bus_pos[line.from_bus]): -coef,
                vmap.theta.index(bus_pos[line.to_bus]): coef,
            },
            0.0,
            tag=f"{FLOW_DEF}:{line.id}",
        )
        j = vmap.flow.index(k)
        frag.lb[j], frag.ub[j] = -line.zeta_s, line.zeta_s

    ref = case.reference_bus()
    for i, bus in enumerate(case.buses):
        j = vmap.theta.index(i)
        if bus.id == ref:
            frag.lb[j] = frag.ub[j] = 0.0
        else:
            frag.lb[j], frag.ub[j] = bus.theta_min, bus.theta_max
    return frag, frag.variables


def _acc(row: Dict[int, float], j: int, v: float) -> None:
    row[j] = row.get(j, 0.0) + v


def apply_ramping(frag: ProgramFragment, case: Case, prev_gen: Sequence[float]) -> ProgramFragment:
    gen = frag.variables.gen
    for k, g in enumerate(case.generators):
        j = gen.index(k)
        low = max(frag.lb[j], g.ramp_min + prev_gen[k])
        high = min(frag.ub[j], g.ramp_max + prev_gen[k])
        if low > high + _RAMP_SLACK:
            raise EmptyRampIntervalError(g.id, low, high)
        if low > high:
            low = high
        frag.lb[j], frag.ub[j] = low, high
    return frag


def effective_bounds(case: Case, tau_l: Sequence[int], tau_s: Sequence[int]) -> EffectiveBounds:
    """ζn după T_l perioade în afara zonei normale, ζl după T_s în STE, altfel ζs."""
    caps = []
    for k, line in enumerate(case.lines):
        if tau_l[k] >= case.t_l:
            caps.append(line.zeta_n)
        elif tau_s[k] >= case.t_s:
            caps.append(line.zeta_l)
        else:
            caps.append(line.zeta_s)
    return EffectiveBounds(caps=tuple(caps))


def apply_flow_caps(frag: ProgramFragment, case: Case, caps: Sequence[float]) -> ProgramFragment:
    flow = frag.variables.flow
    for k, line in enumerate(case.lines):
        cap = min(caps[k], line.zeta_s)
        j = flow.index(k)
        frag.lb[j], frag.ub[j] = -cap, cap
    return frag


def period_fragment(
    case: Case,
    t: int,
    obs: PeriodObservation,
    prev_gen: Optional[Sequence[float]],
    caps: Optional[Sequence[float]] = None,
) -> ProgramFragment:
    """Bază + rampă (dacă există istoric) + margini pe flux."""
    frag, _ = build_base(case, t, obs)
    if prev_gen is not None:
        apply_ramping(frag, case, prev_gen)
    if caps is not None:
        apply_flow_caps(frag, case, caps)
    return frag


def strict_model(
    case: Case,
    t: int,
    obs: PeriodObservation,
    prev_gen: Optional[Sequence[float]] = None,
) -> ConvexProgram:
    caps = [line.zeta_n for line in case.lines]
    return period_fragment(case, t, obs, prev_gen, caps).build()


# -------------------------------------------------------------------------
# COSTUL DE OPERARE F1
# -------------------------------------------------------------------------
def operating_cost(case: Case, obs: PeriodObservation, point: DispatchPoint) -> CostBreakdown:
    dt = case.dt
    curtailed = np.maximum(np.asarray(obs.availability) - point.renewable, 0.0)
    shed = np.maximum(np.asarray(obs.demand) - point.load, 0.0)
    gen_cost = np.array([g.cost for g in case.generators])
    ren_pen = np.array([r.penalty for r in case.renewables])
    load_pen = np.array([d.penalty for d in case.loads])
    return CostBreakdown(
        generation=float(dt * gen_cost @ point.gen) if gen_cost.size else 0.0,
        curtailment=float(dt * ren_pen @ curtailed) if ren_pen.size else 0.0,
        shed=float(dt * load_pen @ shed) if load_pen.size else 0.0,
        shed_energy=float(dt * shed.sum()),
        curtailed_energy=float(dt * curtailed.sum()),
    )
