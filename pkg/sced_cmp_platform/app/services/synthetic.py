"""
Generator de cazuri sintetice de tip RTS (73 bare, 108 linii, 158 generatoare).

Topologia: un arbore aleator de acoperire plus muchii suplimentare, verificat
cu networkx. Profilul de consum are vârf dimineața și seara, e eșantionat la
5 minute și agregat la perioade de 15 minute (media a trei eșantioane).
"""
import logging
from typing import List, Set, Tuple

import networkx as nx
import numpy as np

from ..models.network import Bus, Case, Generator, Line, Load, RenewableSource
from .case_tools import aggregate_series

logger = logging.getLogger(__name__)

# -----------------------------
# 🔹 Parametri impliciți
# -----------------------------
RTS_BUSES = 73
RTS_LINES = 108
RTS_GENERATORS = 158
RTS_RENEWABLES = 20
DAY_PERIODS = 96
SUBSAMPLES = 3  # 5 min -> 15 min
CURTAIL_PENALTY = 300.0
SHED_PENALTY = 1000.0
LOAD_BUS_SHARE = 0.7


def _topology(rng: np.random.Generator, n_buses: int, n_lines: int) -> List[Tuple[int, int]]:
    max_edges = n_buses * (n_buses - 1) // 2
    if not (n_buses - 1 <= n_lines <= max_edges):
        raise ValueError(f"{n_lines} lines cannot connect {n_buses} buses")
    edges: List[Tuple[int, int]] = []
    seen: Set[Tuple[int, int]] = set()
    for k in range(1, n_buses):
        j = int(rng.integers(0, k))
        edges.append((j, k))
        seen.add((j, k))
    while len(edges) < n_lines:
        i, j = sorted(int(v) for v in rng.choice(n_buses, size=2, replace=False))
        if (i, j) not in seen:
            edges.append((i, j))
            seen.add((i, j))

    graph = nx.Graph()
    graph.add_nodes_from(range(n_buses))
    graph.add_edges_from(edges)
    if not nx.is_connected(graph):
        raise RuntimeError("synthetic topology is not connected")
    return edges


def daily_profile(rng: np.random.Generator, periods: int, subsamples: int = SUBSAMPLES) -> np.ndarray:
    """Profil normalizat (vârf ≈ 1) cu vârfuri la ~8:00 și ~19:00."""
    n = periods * subsamples
    hours = np.arange(n) * 24.0 / n
    shape = (
        0.55
        + 0.25 * np.exp(-((hours - 8.0) / 2.0) ** 2)
        + 0.40 * np.exp(-((hours - 19.0) / 2.5) ** 2)
    )
    shape = shape * (1.0 + 0.01 * rng.standard_normal(n))
    shape = np.clip(shape, 0.0, None) / shape.max()
    return np.asarray(aggregate_series(shape, subsamples))


def _solar(hours: np.ndarray) -> np.ndarray:
    return np.clip(np.sin(np.pi * (hours - 6.0) / 12.0), 0.0, None)


def _wind(rng: np.random.Generator, n: int) -> np.ndarray:
    walk = np.cumsum(rng.normal(0.0, 0.05, n))
    return np.clip(0.5 + walk - walk.mean(), 0.0, 1.0)


def synthesize_case(
    seed: int = 0,
    n_buses: int = RTS_BUSES,
    n_lines: int = RTS_LINES,
    n_generators: int = RTS_GENERATORS,
    n_renewables: int = RTS_RENEWABLES,
    periods: int = DAY_PERIODS,
    t_l: int = 16,
    t_s: int = 1,
    curtail_penalty: float = CURTAIL_PENALTY,
    shed_penalty: float = SHED_PENALTY,
) -> Case:
    rng = np.random.default_rng(seed)
    dt = 24.0 / periods
    bus_ids = [str(k + 1) for k in range(n_buses)]
    buses = tuple(Bus(id=b) for b in bus_ids)

    lines = []
    for k, (i, j) in enumerate(_topology(rng, n_buses, n_lines)):
        zeta_n = float(rng.uniform(80.0, 250.0))
        lines.append(
            Line(
                id=f"L{k + 1}",
                from_bus=bus_ids[i],
                to_bus=bus_ids[j],
                x=float(rng.uniform(0.02, 0.2)),
                zeta_n=zeta_n,
                zeta_l=zeta_n * 1.15,
                zeta_s=zeta_n * 1.30,
            )
        )

    generators = []
    for k in range(n_generators):
        p_max = float(rng.uniform(20.0, 100.0))
        ramp = float(rng.uniform(0.2, 0.6)) * p_max
        generators.append(
            Generator(
                id=f"G{k + 1}",
                bus=bus_ids[int(rng.integers(0, n_buses))],
                p_min=0.0,
                p_max=p_max,
                cost=float(rng.uniform(10.0, 60.0)),
                ramp_min=-ramp,
                ramp_max=ramp,
            )
        )

    hours = np.arange(periods) * dt
    renewables = []
    for k in range(n_renewables):
        capacity = float(rng.uniform(20.0, 150.0))
        shape = _solar(hours) if k % 2 == 0 else _wind(rng, periods)
        renewables.append(
            RenewableSource(
                id=f"R{k + 1}",
                bus=bus_ids[int(rng.integers(0, n_buses))],
                penalty=curtail_penalty,
                availability=tuple(float(v) for v in capacity * shape),
            )
        )

    profile = daily_profile(rng, periods)
    n_load_buses = max(1, int(round(LOAD_BUS_SHARE * n_buses)))
    load_buses = sorted(rng.choice(n_buses, size=n_load_buses, replace=False))
    loads = []
    for k, b in enumerate(load_buses):
        peak = float(rng.uniform(50.0, 150.0))
        loads.append(
            Load(
                id=f"D{k + 1}",
                bus=bus_ids[int(b)],
                penalty=shed_penalty,
                demand=tuple(float(v) for v in peak * profile),
            )
        )

    case = Case(
        buses=buses,
        lines=tuple(lines),
        generators=tuple(generators),
        renewables=tuple(renewables),
        loads=tuple(loads),
        horizon=periods,
        dt=dt,
        t_l=t_l,
        t_s=t_s,
    )
    logger.info(
        "synthetic case built",
        extra={"seed": seed, "buses": n_buses, "lines": n_lines, "generators": n_generators},
    )
    return case
