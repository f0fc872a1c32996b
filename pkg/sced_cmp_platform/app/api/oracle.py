import click

from ..config import ZONE_TOL
from ..errors import PeriodInfeasibleError
from ..services.case_tools import scale_loads
from ..services.dca import dca_solve
from ..services.formulation import observe
from ..services.oracle import oracle_solve, relative_gap
from ..services.rolling_horizon import initial_state
from ..services.surrogate import exact_cmp_objective
from .options import (
    build_dca_config,
    case_option,
    dca_options,
    prepare_case,
    read_config_file,
    reports_errors,
    scenario_options,
)


# 🔹 Certificare prin enumerare pe rețele mici
@click.command("oracle")
@case_option()
@click.option("--period", type=int, default=0, show_default=True)
@dca_options()
@scenario_options
@click.option("--jobs", type=int, default=1, show_default=True)
@reports_errors
def command(case_path, period, config_path, load_scale, dt, aggregate, jobs, **flags):
    """Compare the DCA solution of one period with the enumerated exact optimum."""
    cfg = build_dca_config(read_config_file(config_path), **flags)
    case = scale_loads(prepare_case(case_path, dt, aggregate), load_scale)
    if not 0 <= period < case.horizon:
        raise click.BadParameter(f"period must be in [0, {case.horizon - 1}]", param_hint="--period")

    state = initial_state(case, cfg)
    obs = observe(case, period)
    best = oracle_solve(case, period, obs, state, cfg, n_jobs=jobs)
    dca = dca_solve(case, period, obs, state, cfg)
    if dca.point is None:
        raise PeriodInfeasibleError(period, f"dca: {dca.detail}")
    dca_obj = exact_cmp_objective(dca.point, obs, case, cfg, ZONE_TOL)

    click.echo(f"oracle optimum: {best.objective:.6f} ({best.evaluated} assignments, {best.infeasible} infeasible)")
    click.echo(f"oracle zones: {' '.join(z.value for z in best.assignment.zones)}")
    click.echo(f"dca exact objective: {dca_obj:.6f} ({dca.status.value}, {len(dca.iterations)} iterations)")
    click.echo(f"relative gap: {relative_gap(dca_obj, best.objective):.6e}")
