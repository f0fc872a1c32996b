import math
from typing import Callable, Optional, Sequence

import numpy as np
import pytest

from sced_cmp_platform.app.config import SAMPLE_CASE
from sced_cmp_platform.app.models.dca import DcaConfig
from sced_cmp_platform.app.models.network import Bus, Case, Generator, Line, Load, RenewableSource


@pytest.fixture
def make_two_bus() -> Callable[..., Case]:
    """Generator la bara 1 (10 $/MWh, 100 MW), consum la bara 2, linie ζ = (50, 70, 90)."""

    def build(
        demand: Sequence[float] = (80.0,),
        t_l: int = 4,
        t_s: int = 1,
        dt: float = 1.0,
        ramp: float = math.inf,
    ) -> Case:
        return Case(
            buses=(Bus(id="1"), Bus(id="2")),
            lines=(Line(id="L1", from_bus="1", to_bus="2", x=0.1, zeta_n=50, zeta_l=70, zeta_s=90),),
            generators=(
                Generator(id="G1", bus="1", p_min=0, p_max=100, cost=10, ramp_min=-ramp, ramp_max=ramp),
            ),
            loads=(Load(id="D1", bus="2", penalty=1000, demand=tuple(demand)),),
            horizon=len(demand),
            dt=dt,
            t_l=t_l,
            t_s=t_s,
        )

    return build


@pytest.fixture
def two_bus(make_two_bus) -> Case:
    return make_two_bus()


@pytest.fixture
def one_bus_shedding() -> Case:
    return Case(
        buses=(Bus(id="1"),),
        generators=(Generator(id="G1", bus="1", p_min=0, p_max=50, cost=20),),
        loads=(Load(id="D1", bus="1", penalty=1000, demand=(80.0,)),),
        horizon=1,
        dt=1.0,
        t_l=1,
        t_s=1,
    )


@pytest.fixture
def sample_case_path():
    return SAMPLE_CASE


@pytest.fixture
def dca_config() -> DcaConfig:
    return DcaConfig(epsilon=0.1, gamma_l=0.5, gamma_s=0.5)


@pytest.fixture
def random_case() -> Callable[..., Case]:
    """Rețele mici aleatoare, conexe, fără rampe, cu p_min = 0 (mereu fezabile)."""

    def build(
        rng: np.random.Generator,
        n_buses: Optional[int] = None,
        max_lines: int = 4,
        horizon: int = 3,
        t_l: int = 2,
        t_s: int = 1,
    ) -> Case:
        n_buses = n_buses or int(rng.integers(2, 5))
        bus_ids = [str(k + 1) for k in range(n_buses)]
        edges = [(int(rng.integers(0, k)), k) for k in range(1, n_buses)]
        candidates = [(i, j) for i in range(n_buses) for j in range(i + 1, n_buses) if (i, j) not in edges]
        rng.shuffle(candidates)
        edges += candidates[: max(0, max_lines - len(edges))]

        lines = []
        for k, (i, j) in enumerate(edges[:max_lines]):
            zeta_n = float(rng.uniform(10, 40))
            lines.append(
                Line(
                    id=f"L{k + 1}",
                    from_bus=bus_ids[i],
                    to_bus=bus_ids[j],
                    x=float(rng.uniform(0.05, 0.3)),
                    zeta_n=zeta_n,
                    zeta_l=1.3 * zeta_n,
                    zeta_s=1.6 * zeta_n,
                )
            )
        generators = tuple(
            Generator(
                id=f"G{k + 1}",
                bus=bus_ids[int(rng.integers(0, n_buses))],
                p_min=0.0,
                p_max=float(rng.uniform(40, 120)),
                cost=float(rng.uniform(10, 50)),
            )
            for k in range(int(rng.integers(1, 4)))
        )
        loads = tuple(
            Load(
                id=f"D{k + 1}",
                bus=bus_ids[int(rng.integers(0, n_buses))],
                penalty=1000.0,
                demand=tuple(float(v) for v in rng.uniform(20, 60, horizon)),
            )
            for k in range(int(rng.integers(1, 4)))
        )
        renewables = tuple(
            RenewableSource(
                id=f"R{k + 1}",
                bus=bus_ids[int(rng.integers(0, n_buses))],
                penalty=300.0,
                availability=tuple(float(v) for v in rng.uniform(0, 30, horizon)),
            )
            for k in range(int(rng.integers(0, 2)))
        )
        return Case(
            buses=tuple(Bus(id=b) for b in bus_ids),
            lines=tuple(lines),
            generators=generators,
            renewables=renewables,
            loads=loads,
            horizon=horizon,
            dt=1.0,
            t_l=t_l,
            t_s=t_s,
        )

    return build
