from pathlib import Path

import click

from ..services.synthetic import (
    DAY_PERIODS,
    RTS_BUSES,
    RTS_GENERATORS,
    RTS_LINES,
    RTS_RENEWABLES,
    synthesize_case,
)
from ..storage.case_store import write_case
from .options import reports_errors


# 🔹 Caz sintetic de tip RTS
@click.command("synth")
@click.option("--out", "out_dir", type=click.Path(file_okay=False, path_type=Path), required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--buses", type=int, default=RTS_BUSES, show_default=True)
@click.option("--lines", type=int, default=RTS_LINES, show_default=True)
@click.option("--generators", type=int, default=RTS_GENERATORS, show_default=True)
@click.option("--renewables", type=int, default=RTS_RENEWABLES, show_default=True)
@click.option("--periods", type=int, default=DAY_PERIODS, show_default=True)
@click.option("--name", default="synthetic", show_default=True)
@reports_errors
def command(out_dir, seed, buses, lines, generators, renewables, periods, name):
    """Write a seeded synthetic case (and its series) to OUT."""
    case = synthesize_case(
        seed=seed,
        n_buses=buses,
        n_lines=lines,
        n_generators=generators,
        n_renewables=renewables,
        periods=periods,
    )
    path = write_case(case, Path(out_dir) / f"{name}.case")
    click.echo(
        f"wrote {path}: {len(case.buses)} buses, {len(case.lines)} lines, "
        f"{len(case.generators)} generators, T={case.horizon}"
    )
