import statistics

import numpy as np
import pytest

from sced_cmp_platform.app.config import ZONE_TOL
from sced_cmp_platform.app.errors import EnumerationBudgetError
from sced_cmp_platform.app.models.dca import DcaConfig
from sced_cmp_platform.app.models.dispatch import DispatchState, Zone
from sced_cmp_platform.app.models.network import Bus, Case, Line
from sced_cmp_platform.app.services.dca import dca_solve
from sced_cmp_platform.app.services.formulation import observe
from sced_cmp_platform.app.services.oracle import assignment_of, oracle_solve, relative_gap
from sced_cmp_platform.app.services.rolling_horizon import initial_state
from sced_cmp_platform.app.services.surrogate import exact_cmp_objective


@pytest.mark.parametrize(
    "demand, gamma, objective, zone",
    [
        (80.0, 0.5, 801.0, Zone.STE),
        (40.0, 0.5, 400.0, Zone.NORMAL),
        (80.0, 1e6, 30500.0, Zone.NORMAL),
    ],
)
def test_two_bus_optimum(make_two_bus, demand, gamma, objective, zone):
    case = make_two_bus(demand=(demand,))
    cfg = DcaConfig(gamma_l=gamma, gamma_s=gamma)
    result = oracle_solve(case, 0, observe(case, 0), initial_state(case, cfg), cfg)
    assert result.objective == pytest.approx(objective, rel=1e-7)
    assert result.assignment.zones == (zone,)
    assert result.evaluated == 3 and result.infeasible == 0


def test_dca_matches_oracle_on_stressed_two_bus(two_bus, dca_config):
    obs = observe(two_bus, 0)
    state = initial_state(two_bus, dca_config)
    best = oracle_solve(two_bus, 0, obs, state, dca_config)
    dca = dca_solve(two_bus, 0, obs, state, dca_config)
    dca_obj = exact_cmp_objective(dca.point, obs, two_bus, dca_config, ZONE_TOL)
    assert dca_obj == pytest.approx(801.0, abs=1e-3)
    assert abs(relative_gap(dca_obj, best.objective)) <= 1e-6
    assert assignment_of(dca.flows, two_bus) == best.assignment.zones


def test_budget_is_enforced():
    buses = tuple(Bus(id=str(k)) for k in range(1, 15))
    lines = tuple(
        Line(id=f"L{k}", from_bus=str(k), to_bus=str(k + 1), x=0.1, zeta_n=10, zeta_l=20, zeta_s=30)
        for k in range(1, 14)
    )
    case = Case(buses=buses, lines=lines, horizon=1, dt=1.0, t_l=1, t_s=1)
    state = DispatchState(prev_gen=(), prev_flow=(0.0,) * 13, tau_l=(0,) * 13, tau_s=(0,) * 13)
    with pytest.raises(EnumerationBudgetError, match="3\\^13"):
        oracle_solve(case, 0, observe(case, 0), state)


def test_parallel_enumeration_matches_serial(random_case):
    case = random_case(np.random.default_rng(5), n_buses=3, max_lines=3, horizon=1)
    cfg = DcaConfig()
    obs, state = observe(case, 0), initial_state(case, cfg)
    serial = oracle_solve(case, 0, obs, state, cfg, n_jobs=1)
    parallel = oracle_solve(case, 0, obs, state, cfg, n_jobs=2)
    assert parallel == serial


def test_relative_gap():
    assert relative_gap(101.0, 100.0) == pytest.approx(0.01)
    assert relative_gap(0.5, 0.0) == pytest.approx(0.5)


@pytest.mark.slow
def test_oracle_lower_bounds_dca_on_random_cases(random_case):
    rng = np.random.default_rng(99)
    cfg = DcaConfig()
    gaps = []
    for _ in range(50):
        n = int(rng.integers(2, 5))
        case = random_case(rng, n_buses=n, max_lines=min(4, n - 1 + int(rng.integers(0, 3))), horizon=1)
        obs = observe(case, 0)
        state = initial_state(case, cfg)
        best = oracle_solve(case, 0, obs, state, cfg)
        dca = dca_solve(case, 0, obs, state, cfg)
        dca_obj = exact_cmp_objective(dca.point, obs, case, cfg, ZONE_TOL)
        gap = relative_gap(dca_obj, best.objective)
        assert gap >= -1e-5
        gaps.append(gap)
    assert statistics.median(gaps) <= 0.05


def test_objective_is_nondecreasing_in_gamma(random_case):
    rng = np.random.default_rng(9)
    for _ in range(5):
        case = random_case(rng, n_buses=3, max_lines=3, horizon=1)
        obs = observe(case, 0)
        state = initial_state(case)
        values = [
            oracle_solve(case, 0, obs, state, DcaConfig(gamma_l=g, gamma_s=g)).objective
            for g in (0.01, 0.5, 5.0, 500.0, 1e5)
        ]
        for low, high in zip(values, values[1:]):
            assert high >= low - 1e-7 * max(1.0, abs(low))
