"""Scrierea rezultatelor: CSV-uri cu pandas și summary.json."""
import json
from pathlib import Path
from typing import Dict, Iterable, Mapping, Union

import pandas as pd

from ..models.dispatch import SimulationResult

PathLike = Union[str, Path]

PERIOD_COLUMNS = [
    "period",
    "operating_cost",
    "generation_cost",
    "curtailment_cost",
    "shed_cost",
    "shed_energy",
    "curtailed_energy",
    "normal",
    "lte",
    "ste",
    "dca_iterations",
    "status",
]


def periods_frame(result: SimulationResult) -> pd.DataFrame:
    rows = [
        {
            "period": r.period,
            "operating_cost": r.operating_cost,
            "generation_cost": r.generation_cost,
            "curtailment_cost": r.curtailment_cost,
            "shed_cost": r.shed_cost,
            "shed_energy": r.shed_energy,
            "curtailed_energy": r.curtailed_energy,
            "normal": r.zones.normal,
            "lte": r.zones.lte,
            "ste": r.zones.ste,
            "dca_iterations": r.dca_iterations,
            "status": r.status,
        }
        for r in result.reports
    ]
    return pd.DataFrame(rows, columns=PERIOD_COLUMNS)


def _matrix_frame(result: SimulationResult, columns, values) -> pd.DataFrame:
    rows = list(values)
    data = {"period": [r.period for r in result.reports]}
    for k, name in enumerate(columns):
        data[name] = [row[k] for row in rows]
    return pd.DataFrame(data)


def lmp_frame(result: SimulationResult) -> pd.DataFrame:
    return _matrix_frame(result, result.bus_ids, (r.lmp for r in result.reports))


def flows_frame(result: SimulationResult) -> pd.DataFrame:
    return _matrix_frame(result, result.line_ids, (r.flows for r in result.reports))


def save_summary(summary: Mapping, path: Path) -> None:
    with path.open("w", encoding="utf-8") as f:
        json.dump(dict(summary), f, ensure_ascii=False, indent=2, default=str)


def write_results(result: SimulationResult, out_dir: PathLike) -> Dict[str, Path]:
    """periods.csv, lmp.csv, flows.csv și summary.json în `out_dir`."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "periods": out / "periods.csv",
        "lmp": out / "lmp.csv",
        "flows": out / "flows.csv",
        "summary": out / "summary.json",
    }
    periods_frame(result).to_csv(paths["periods"], index=False)
    lmp_frame(result).to_csv(paths["lmp"], index=False)
    flows_frame(result).to_csv(paths["flows"], index=False)
    save_summary(result.summary.model_dump(mode="json"), paths["summary"])
    return paths


def write_table(rows: Iterable[Mapping], path: PathLike, columns=None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(list(rows), columns=columns).to_csv(path, index=False)
    return path
