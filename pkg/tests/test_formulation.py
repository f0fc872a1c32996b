import numpy as np
import pytest

from sced_cmp_platform.app.errors import EmptyRampIntervalError
from sced_cmp_platform.app.models.network import Case, Generator, RenewableSource
from sced_cmp_platform.app.services.formulation import (
    FLOW_BALANCE,
    apply_ramping,
    base_variable_map,
    build_base,
    effective_bounds,
    extract_point,
    observe,
    operating_cost,
    period_fragment,
    strict_model,
)
from sced_cmp_platform.app.services.dca import dca_solve
from sced_cmp_platform.app.services.qp_solver import solve
from sced_cmp_platform.app.services.rolling_horizon import initial_state


def test_observe_range(two_bus):
    obs = observe(two_bus, 0)
    assert obs.demand == (80.0,) and obs.availability == ()
    with pytest.raises(ValueError):
        observe(two_bus, 1)


def test_variable_map_layout(two_bus):
    vmap = base_variable_map(two_bus)
    # p_g, p_d, f, θ1, θ2, v_d
    assert vmap.n == 6
    assert (vmap.gen.size, vmap.load.size, vmap.flow.size, vmap.theta.size, vmap.shed.size) == (1, 1, 1, 2, 1)
    assert vmap.zone_n is None


def test_base_program_rows(two_bus):
    frag, _ = build_base(two_bus, 0, observe(two_bus, 0))
    prog = frag.build()
    assert [tag for _, tag in prog.rows_tagged(FLOW_BALANCE)] == ["flow_balance:1", "flow_balance:2"]
    assert prog.n_eq == 3  # două bilanțuri + definiția fluxului
    assert prog.is_linear
    # unghiul barei de referință e fixat
    theta = base_variable_map(two_bus).theta
    assert prog.lb[theta.start] == prog.ub[theta.start] == 0.0


def test_strict_two_bus_dispatch(two_bus):
    obs = observe(two_bus, 0)
    prog = strict_model(two_bus, 0, obs)
    sol = solve(prog)
    assert sol.optimal
    point = extract_point(sol.x, base_variable_map(two_bus))
    assert point.gen[0] == pytest.approx(50.0, abs=1e-4)
    assert point.load[0] == pytest.approx(50.0, abs=1e-4)
    assert point.flow[0] == pytest.approx(50.0, abs=1e-4)
    # θ1 − θ2 = f·X / base
    assert point.theta[0] - point.theta[1] == pytest.approx(0.05, abs=1e-6)
    assert sol.objective == pytest.approx(30500.0, rel=1e-7)

    cost = operating_cost(two_bus, obs, point)
    assert cost.generation == pytest.approx(500.0, rel=1e-6)
    assert cost.shed == pytest.approx(30000.0, rel=1e-6)
    assert cost.shed_energy == pytest.approx(30.0, abs=1e-4)
    assert cost.total == pytest.approx(30500.0, rel=1e-6)


def test_costs_scale_with_dt(make_two_bus):
    case = make_two_bus(dt=0.25)
    sol = solve(strict_model(case, 0, observe(case, 0)))
    assert sol.objective == pytest.approx(0.25 * 30500.0, rel=1e-7)


def test_ramping_bounds(make_two_bus):
    case = make_two_bus(ramp=20.0)
    frag = period_fragment(case, 0, observe(case, 0), prev_gen=[30.0])
    j = frag.variables.gen.index(0)
    assert (frag.lb[j], frag.ub[j]) == (10.0, 50.0)


def test_empty_ramp_interval_raises(two_bus):
    case = Case(
        buses=two_bus.buses,
        lines=two_bus.lines,
        generators=(Generator(id="G1", bus="1", p_min=60, p_max=100, cost=10, ramp_min=-5, ramp_max=5),),
        loads=two_bus.loads,
        horizon=1,
        dt=1.0,
        t_l=4,
        t_s=1,
    )
    frag, _ = build_base(case, 0, observe(case, 0))
    with pytest.raises(EmptyRampIntervalError, match="G1"):
        apply_ramping(frag, case, [40.0])


def test_effective_bounds(make_two_bus):
    case = make_two_bus(t_l=3, t_s=1)
    assert effective_bounds(case, [0], [0]).caps == (90.0,)
    assert effective_bounds(case, [1], [1]).caps == (70.0,)
    assert effective_bounds(case, [3], [0]).caps == (50.0,)
    # T_l are prioritate
    assert effective_bounds(case, [3], [1]).caps == (50.0,)


def test_flow_caps_never_loosen_ste(two_bus):
    frag = period_fragment(two_bus, 0, observe(two_bus, 0), None, caps=[500.0])
    j = frag.variables.flow.index(0)
    assert (frag.lb[j], frag.ub[j]) == (-90.0, 90.0)


def test_renewables_and_curtailment(two_bus):
    case = two_bus.model_copy(
        update={"renewables": (RenewableSource(id="R1", bus="2", penalty=300, availability=(100.0,)),)}
    )
    obs = observe(case, 0)
    sol = solve(strict_model(case, 0, obs))
    assert sol.optimal
    point = extract_point(sol.x, base_variable_map(case))
    # regenerabila acoperă consumul, restul de 20 MW e redus
    assert point.renewable[0] == pytest.approx(80.0, abs=1e-4)
    assert point.gen[0] == pytest.approx(0.0, abs=1e-4)
    cost = operating_cost(case, obs, point)
    assert cost.curtailed_energy == pytest.approx(20.0, abs=1e-4)
    assert cost.total == pytest.approx(6000.0, rel=1e-6)
    assert np.isclose(sol.objective, cost.total, rtol=1e-6)


# -----------------------------
# 🔹 Proprietăți pe rețele aleatoare
# -----------------------------
def _strict_optima(random_case, seed, count):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        case = random_case(rng, n_buses=int(rng.integers(2, 6)), max_lines=6)
        for t in range(case.horizon):
            obs = observe(case, t)
            sol = solve(strict_model(case, t, obs))
            assert sol.optimal
            yield case, t, obs, sol


def test_dispatch_is_lossless(random_case, dca_config):
    for case, t, obs, sol in _strict_optima(random_case, 31, 20):
        point = extract_point(sol.x, base_variable_map(case))
        assert point.gen.sum() + point.renewable.sum() == pytest.approx(point.load.sum(), abs=1e-6)
        if t == 0:
            result = dca_solve(case, t, obs, initial_state(case, dca_config), dca_config)
            cmp_point = result.point
            assert cmp_point.gen.sum() + cmp_point.renewable.sum() == pytest.approx(cmp_point.load.sum(), abs=1e-6)


def test_strict_optimum_is_feasible_under_relaxed_caps(random_case):
    rng = np.random.default_rng(32)
    for case, t, obs, sol in _strict_optima(random_case, 32, 20):
        tau_l = [int(rng.integers(0, case.t_l + 1)) for _ in case.lines]
        tau_s = [int(rng.integers(0, case.t_s + 1)) for _ in case.lines]
        caps = effective_bounds(case, tau_l, tau_s).caps
        assert all(cap >= line.zeta_n for cap, line in zip(caps, case.lines))
        relaxed = period_fragment(case, t, obs, None, caps).build()
        x = sol.x
        assert np.max(np.abs(relaxed.A_eq @ x - relaxed.b_eq)) <= 1e-6
        assert np.all(relaxed.G @ x <= relaxed.h + 1e-6)
        assert np.all(x >= relaxed.lb - 1e-6) and np.all(x <= relaxed.ub + 1e-6)


def test_shed_and_curtailment_epigraphs_are_tight(random_case):
    for case, _, obs, sol in _strict_optima(random_case, 33, 20):
        vmap = base_variable_map(case)
        x = sol.x
        shed = np.maximum(np.array(obs.demand) - x[vmap.load.slice], 0.0)
        assert x[vmap.shed.slice] == pytest.approx(shed, abs=1e-6)
        if case.renewables:
            curtail = np.maximum(np.array(obs.availability) - x[vmap.renewable.slice], 0.0)
            assert x[vmap.curtail.slice] == pytest.approx(curtail, abs=1e-6)
