"""Comparația CMP vs modelul strict, câte un rând per (caz, factor de scalare)."""
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from ..models.dca import DcaConfig
from ..models.dispatch import SimulationResult
from ..models.network import Case
from .lmp import median_demand_bus, scarcity_floor, scarcity_intervals
from .rolling_horizon import simulate

logger = logging.getLogger(__name__)

COMPARE_COLUMNS = [
    "case",
    "load_scale",
    "cost_cmp",
    "cost_strict",
    "cost_decrease_pct",
    "shed_cmp",
    "shed_strict",
    "zones_cmp",
    "zones_strict",
    "monitored_bus",
    "scarcity_cmp",
    "scarcity_strict",
]


def bus_prices(result: SimulationResult, bus: str) -> List[float]:
    k = result.bus_ids.index(bus)
    return [r.lmp[k] for r in result.reports]


def format_intervals(runs: Sequence[Tuple[int, int]]) -> str:
    return ";".join(f"{a}-{b}" for a, b in runs)


def cost_decrease_pct(cmp_cost: float, strict_cost: float) -> float:
    if strict_cost == 0:
        return 0.0
    return 100.0 * (strict_cost - cmp_cost) / strict_cost


def compare_case(
    name: str,
    case: Case,
    cfg: Optional[DcaConfig] = None,
    load_scale: float = 1.0,
    bus: Optional[str] = None,
) -> Dict:
    cfg = cfg or DcaConfig()
    cmp_run = simulate(case, "cmp", cfg, load_scale)
    strict_run = simulate(case, "strict", cfg, load_scale)
    bus = bus or median_demand_bus(case)
    if bus not in cmp_run.bus_ids:
        raise ValueError(f"unknown monitored bus {bus!r}")
    floor = scarcity_floor(case)
    a, b = cmp_run.summary, strict_run.summary
    logger.info(
        "comparison finished",
        extra={"case": name, "load_scale": load_scale, "cost_cmp": a.total_cost, "cost_strict": b.total_cost},
    )
    return {
        "case": name,
        "load_scale": load_scale,
        "cost_cmp": a.total_cost,
        "cost_strict": b.total_cost,
        "cost_decrease_pct": cost_decrease_pct(a.total_cost, b.total_cost),
        "shed_cmp": a.total_shed,
        "shed_strict": b.total_shed,
        "zones_cmp": a.zone_triple(),
        "zones_strict": b.zone_triple(),
        "monitored_bus": bus,
        "scarcity_cmp": format_intervals(scarcity_intervals(bus_prices(cmp_run, bus), floor)),
        "scarcity_strict": format_intervals(scarcity_intervals(bus_prices(strict_run, bus), floor)),
    }
