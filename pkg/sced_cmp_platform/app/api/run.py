from pathlib import Path

import click

from ..services.rolling_horizon import simulate
from ..storage.report_store import write_results
from .options import (
    build_dca_config,
    case_option,
    dca_options,
    prepare_case,
    read_config_file,
    reports_errors,
    scenario_options,
)


# 🔹 Simulare pe tot orizontul, CSV-uri + linie de sumar
@click.command("run")
@case_option()
@click.option("--mode", type=click.Choice(["cmp", "strict"]), default="cmp", show_default=True)
@dca_options()
@scenario_options
@click.option("--out", "out_dir", type=click.Path(file_okay=False, path_type=Path), default=Path("results"), show_default=True)
@reports_errors
def command(case_path, mode, config_path, load_scale, dt, aggregate, out_dir, **flags):
    """Run the rolling-horizon dispatch and write periods/lmp/flows CSVs."""
    cfg = build_dca_config(read_config_file(config_path), **flags)
    case = prepare_case(case_path, dt, aggregate)
    result = simulate(case, mode, cfg, load_scale)
    paths = write_results(result, out_dir)

    s = result.summary
    click.echo(
        f"mode={s.mode} periods={s.periods} total_cost={s.total_cost:.2f} "
        f"total_shed={s.total_shed:.2f} zones={s.zone_triple()} "
        f"failed={s.failed_periods} scarcity={s.scarcity_periods}"
    )
    click.echo(f"results written to {paths['periods'].parent}")
