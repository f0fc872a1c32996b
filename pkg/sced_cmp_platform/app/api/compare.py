from pathlib import Path

import click
import pandas as pd
from joblib import Parallel, delayed

from ..services.comparison import COMPARE_COLUMNS, compare_case
from ..storage.report_store import write_table
from .options import (
    build_dca_config,
    case_option,
    dca_options,
    prepare_case,
    read_config_file,
    reports_errors,
)


# 🔹 CMP vs strict pentru fiecare (zi, factor de scalare)
@click.command("compare")
@case_option(multiple=True)
@click.option("--load-scale", "load_scales", type=float, multiple=True, default=(1.0,), show_default=True)
@click.option("--dt", type=float, default=None)
@click.option("--bus", default=None, help="Monitored bus for scarcity intervals (default: median-demand bus).")
@dca_options()
@click.option("--jobs", type=int, default=-1, show_default=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False, path_type=Path), default=Path("results"), show_default=True)
@reports_errors
def command(case_paths, load_scales, dt, bus, config_path, jobs, out_dir, **flags):
    """Compare the CMP model with the strict model, one row per case and scale."""
    cfg = build_dca_config(read_config_file(config_path), **flags)
    cases = [(p.stem, prepare_case(p, dt)) for p in case_paths]
    tasks = [(name, case, scale) for name, case in cases for scale in load_scales]

    rows = Parallel(n_jobs=jobs)(
        delayed(compare_case)(name, case, cfg, scale, bus) for name, case, scale in tasks
    )
    rows = sorted(rows, key=lambda r: (r["case"], r["load_scale"]))
    path = write_table(rows, Path(out_dir) / "comparison.csv", columns=COMPARE_COLUMNS)

    frame = pd.DataFrame(rows, columns=COMPARE_COLUMNS)
    click.echo(frame.to_string(index=False, float_format=lambda v: f"{v:.2f}"))
    click.echo(f"comparison written to {path}")
