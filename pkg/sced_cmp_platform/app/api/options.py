"""Opțiuni comune ale comenzilor și conversia erorilor în coduri de ieșire."""
import contextlib
import functools
from pathlib import Path
from typing import Any, Dict, Optional

import click
import yaml
from pydantic import ValidationError

from ..errors import ScedError
from ..models.dca import DcaConfig
from ..models.network import Case
from ..services.case_tools import aggregate_case, with_dt
from ..storage.case_store import load_case

# flag CLI -> câmp DcaConfig
_DCA_FLAGS = {
    "epsilon": "epsilon",
    "gamma_l": "gamma_l",
    "gamma_s": "gamma_s",
    "prox": "prox_c",
    "tol_obj": "tol_obj",
    "tol_x": "tol_x",
    "max_iters": "max_iters",
    "lmp_source": "lmp_source",
}


def case_option(multiple: bool = False):
    return click.option(
        "--case",
        "case_path" if not multiple else "case_paths",
        required=True,
        multiple=multiple,
        type=click.Path(exists=True, dir_okay=False, path_type=Path),
        help="Case file.",
    )


def dca_options(with_hyper: bool = True):
    """--epsilon/--gamma-l/--gamma-s (opțional), --prox, toleranțe, --lmp-source, --config."""

    def decorator(f):
        opts = []
        if with_hyper:
            opts += [
                click.option("--epsilon", type=float, default=None, help="Approximation parameter ε."),
                click.option("--gamma-l", type=float, default=None, help="Weight of lines beyond the normal rating."),
                click.option("--gamma-s", type=float, default=None, help="Extra weight of lines beyond the LTE rating."),
            ]
        opts += [
            click.option("--prox", type=float, default=None, help="Proximal weight c."),
            click.option("--tol-obj", type=float, default=None),
            click.option("--tol-x", type=float, default=None),
            click.option("--max-iters", type=int, default=None),
            click.option(
                "--lmp-source",
                type=click.Choice(["final-subproblem", "resolve"]),
                default=None,
            ),
            click.option(
                "--config",
                "config_path",
                type=click.Path(exists=True, dir_okay=False, path_type=Path),
                default=None,
                help="YAML file with `dca:` and `grid:` sections.",
            ),
        ]
        for opt in reversed(opts):
            f = opt(f)
        return f

    return decorator


def scenario_options(f):
    f = click.option(
        "--aggregate",
        type=click.IntRange(min=1),
        default=1,
        show_default=True,
        help="Average every N consecutive periods into one.",
    )(f)
    f = click.option("--dt", type=float, default=None, help="Override the period length (hours).")(f)
    f = click.option("--load-scale", type=float, default=1.0, show_default=True)(f)
    return f


def read_config_file(path: Optional[Path]) -> Dict[str, Any]:
    if path is None:
        return {}
    with path.open("r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise click.BadParameter("top level must be a mapping", param_hint="--config")
    return data


def build_dca_config(file_data: Dict[str, Any], **flags) -> DcaConfig:
    """Valorile din fișier, suprascrise de flag-urile date explicit."""
    values = dict(file_data.get("dca") or {})
    for flag, field in _DCA_FLAGS.items():
        if flags.get(flag) is not None:
            values[field] = flags[flag]
    try:
        return DcaConfig(**values)
    except ValidationError as exc:
        err = exc.errors()[0]
        where = ".".join(str(p) for p in err["loc"]) or "dca"
        raise click.BadParameter(f"{where}: {err['msg']}") from None


def prepare_case(path: Path, dt: Optional[float], aggregate: int = 1) -> Case:
    """Încarcă, agregă perioadele, apoi aplică --dt (dacă e dat)."""
    case = aggregate_case(load_case(path), aggregate)
    return with_dt(case, dt) if dt is not None else case


@contextlib.contextmanager
def cli_errors():
    try:
        yield
    except (ScedError, ValueError) as exc:
        raise click.ClickException(str(exc)) from None


def reports_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        with cli_errors():
            return f(*args, **kwargs)

    return wrapper
