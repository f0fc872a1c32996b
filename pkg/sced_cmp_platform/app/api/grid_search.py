from pathlib import Path

import click
from pydantic import ValidationError

from ..models.grid import GridSearchSpec
from ..services.grid_search import GRID_COLUMNS, run_grid, tradeoff_direction
from ..storage.report_store import write_table
from .options import (
    build_dca_config,
    case_option,
    dca_options,
    prepare_case,
    read_config_file,
    reports_errors,
    scenario_options,
)


def _float_list(ctx, param, value):
    if value is None:
        return None
    try:
        return tuple(float(v) for v in value.split(",") if v.strip())
    except ValueError:
        raise click.BadParameter("expected comma-separated numbers") from None


def _grid_spec(file_data, epsilons, gammas_l, gammas_s) -> GridSearchSpec:
    values = dict(file_data.get("grid") or {})
    for key, given in (("epsilons", epsilons), ("gammas_l", gammas_l), ("gammas_s", gammas_s)):
        if given is not None:
            values[key] = given
    try:
        return GridSearchSpec(**values)
    except ValidationError as exc:
        raise click.BadParameter(exc.errors()[0]["msg"], param_hint="grid") from None


# 🔹 Grila (ε, γℓ, γs)
@click.command("grid-search")
@case_option()
@click.option("--epsilons", callback=_float_list, default=None, help="Comma-separated ε values.")
@click.option("--gammas-l", callback=_float_list, default=None, help="Comma-separated γℓ values.")
@click.option("--gammas-s", callback=_float_list, default=None, help="Comma-separated γs values.")
@dca_options(with_hyper=False)
@scenario_options
@click.option("--jobs", type=int, default=-1, show_default=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False, path_type=Path), default=Path("results"), show_default=True)
@reports_errors
def command(case_path, epsilons, gammas_l, gammas_s, config_path, load_scale, dt, aggregate, jobs, out_dir, **flags):
    """Evaluate every (ε, γℓ, γs) combination and rank them by total cost."""
    file_data = read_config_file(config_path)
    spec = _grid_spec(file_data, epsilons, gammas_l, gammas_s)
    base = build_dca_config(file_data, **flags)
    case = prepare_case(case_path, dt, aggregate)

    rows = run_grid(case, spec, base, load_scale, n_jobs=jobs)
    path = write_table(rows, Path(out_dir) / "grid.csv", columns=GRID_COLUMNS)
    failed = sum(1 for r in rows if r["status"] != "ok")
    click.echo(f"evaluated {len(rows)} combinations ({failed} failed); ranking written to {path}")

    holds = tradeoff_direction(rows)
    if holds is None:
        click.echo("tradeoff direction: not checked (needs two ε values)")
    else:
        click.echo(f"tradeoff direction (smaller ε -> more normal lines, higher cost): {'holds' if holds else 'violated'}")
