"""
Citirea și scrierea fișierelor de caz.

    [buses]       id,theta_min,theta_max
    [lines]       id,from,to,x,zeta_n,zeta_l,zeta_s
    [generators]  id,bus,pmin,pmax,cost[,ramp_min,ramp_max]
    [renewables]  id,bus,penalty,series_file
    [loads]       id,bus,penalty,series_file
    [meta]        T,dt,T_l,T_s[,base_mva]

Liniile goale și cele care încep cu '#' sunt ignorate. Fișierele de serie
(câte o valoare pe linie) sunt căutate relativ la directorul cazului.
"""
from pathlib import Path
from typing import Dict, List, Tuple, Union

import numpy as np
from pydantic import ValidationError

from ..errors import CaseParseError, CaseValidationError
from ..models.network import Bus, Case, Generator, Line, Load, RenewableSource

PathLike = Union[str, Path]

SECTIONS = ("buses", "lines", "generators", "renewables", "loads", "meta")
_FIELD_COUNTS = {
    "buses": (3,),
    "lines": (7,),
    "generators": (5, 7),
    "renewables": (4,),
    "loads": (4,),
    "meta": (4, 5),
}
_HEADERS = {
    "buses": "id,theta_min,theta_max",
    "lines": "id,from,to,x,zeta_n,zeta_l,zeta_s",
    "generators": "id,bus,pmin,pmax,cost,ramp_min,ramp_max",
    "renewables": "id,bus,penalty,series_file",
    "loads": "id,bus,penalty,series_file",
    "meta": "T,dt,T_l,T_s,base_mva",
}
SERIES_DIR = "series"

Row = Tuple[int, List[str]]


# -----------------------------
# 🔹 Citire
# -----------------------------
def _split_sections(path: Path) -> Dict[str, List[Row]]:
    sections: Dict[str, List[Row]] = {}
    current = None
    try:
        with path.open("r", encoding="utf-8") as f:
            lines = list(f)
    except UnicodeDecodeError:
        raise CaseParseError(str(path), None, "not valid UTF-8 text") from None
    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip().lower()
            if current not in SECTIONS:
                raise CaseParseError(str(path), line_no, f"unknown section [{current}]")
            if current in sections:
                raise CaseParseError(str(path), line_no, f"section [{current}] appears twice")
            sections[current] = []
            continue
        if current is None:
            raise CaseParseError(str(path), line_no, "data row before any section header")
        fields = [v.strip() for v in line.split(",")]
        if len(fields) not in _FIELD_COUNTS[current]:
            expected = " or ".join(str(n) for n in _FIELD_COUNTS[current])
            raise CaseParseError(
                str(path), line_no, f"[{current}] rows need {expected} fields, got {len(fields)}"
            )
        sections[current].append((line_no, fields))
    return sections


def _number(path: Path, line_no: int, text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise CaseParseError(str(path), line_no, f"not a number: {text!r}") from None


def _integer(path: Path, line_no: int, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise CaseParseError(str(path), line_no, f"not an integer: {text!r}") from None


def read_series(path: Path) -> Tuple[float, ...]:
    if not path.exists():
        raise CaseParseError(str(path), None, "series file not found")
    try:
        values = np.loadtxt(path, dtype=float, ndmin=1, comments="#")
    except ValueError as exc:
        raise CaseParseError(str(path), None, f"malformed series: {exc}") from None
    return tuple(float(v) for v in values)


def _first_message(exc: ValidationError) -> str:
    msg = exc.errors()[0]["msg"]
    return msg.removeprefix("Value error, ")


def load_case(path: PathLike) -> Case:
    path = Path(path)
    if not path.exists():
        raise CaseParseError(str(path), None, "case file not found")
    sections = _split_sections(path)
    if "meta" not in sections or len(sections["meta"]) != 1:
        raise CaseParseError(str(path), None, "exactly one [meta] row is required")
    if not sections.get("buses"):
        raise CaseParseError(str(path), None, "[buses] section is missing or empty")

    root = path.parent

    def num(row: Row, k: int) -> float:
        return _number(path, row[0], row[1][k])

    try:
        buses = [Bus(id=r[1][0], theta_min=num(r, 1), theta_max=num(r, 2)) for r in sections["buses"]]
        lines = []
        for r in sections.get("lines", []):
            f = r[1]
            lines.append(
                Line(
                    id=f[0],
                    from_bus=f[1],
                    to_bus=f[2],
                    x=num(r, 3),
                    zeta_n=num(r, 4),
                    zeta_l=num(r, 5),
                    zeta_s=num(r, 6),
                )
            )
        generators = []
        for r in sections.get("generators", []):
            f = r[1]
            ramps = {"ramp_min": num(r, 5), "ramp_max": num(r, 6)} if len(f) == 7 else {}
            generators.append(
                Generator(id=f[0], bus=f[1], p_min=num(r, 2), p_max=num(r, 3), cost=num(r, 4), **ramps)
            )
        renewables = []
        for r in sections.get("renewables", []):
            f = r[1]
            renewables.append(
                RenewableSource(id=f[0], bus=f[1], penalty=num(r, 2), availability=read_series(root / f[3]))
            )
        loads = []
        for r in sections.get("loads", []):
            f = r[1]
            loads.append(Load(id=f[0], bus=f[1], penalty=num(r, 2), demand=read_series(root / f[3])))

        meta_line, meta = sections["meta"][0]
        extra = {"base_mva": _number(path, meta_line, meta[4])} if len(meta) == 5 else {}
        return Case(
            buses=tuple(buses),
            lines=tuple(lines),
            generators=tuple(generators),
            renewables=tuple(renewables),
            loads=tuple(loads),
            horizon=_integer(path, meta_line, meta[0]),
            dt=_number(path, meta_line, meta[1]),
            t_l=_integer(path, meta_line, meta[2]),
            t_s=_integer(path, meta_line, meta[3]),
            **extra,
        )
    except ValidationError as exc:
        raise CaseValidationError(f"{path}: {_first_message(exc)}") from None


# -----------------------------
# 🔹 Scriere
# -----------------------------
def _fmt(value: float) -> str:
    return repr(float(value))


def write_series(values, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(path, np.asarray(values, dtype=float), fmt="%.17g")


def write_case(case: Case, path: PathLike) -> Path:
    """Inversul lui load_case; seriile merg în `series/` lângă caz."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    root = path.parent

    rows: Dict[str, List[str]] = {name: [] for name in SECTIONS}
    for b in case.buses:
        rows["buses"].append(",".join([b.id, _fmt(b.theta_min), _fmt(b.theta_max)]))
    for line in case.lines:
        rows["lines"].append(
            ",".join(
                [line.id, line.from_bus, line.to_bus]
                + [_fmt(v) for v in (line.x, line.zeta_n, line.zeta_l, line.zeta_s)]
            )
        )
    for g in case.generators:
        rows["generators"].append(
            ",".join([g.id, g.bus] + [_fmt(v) for v in (g.p_min, g.p_max, g.cost, g.ramp_min, g.ramp_max)])
        )
    for r in case.renewables:
        rel = f"{SERIES_DIR}/renewable_{r.id}.csv"
        write_series(r.availability, root / rel)
        rows["renewables"].append(",".join([r.id, r.bus, _fmt(r.penalty), rel]))
    for d in case.loads:
        rel = f"{SERIES_DIR}/load_{d.id}.csv"
        write_series(d.demand, root / rel)
        rows["loads"].append(",".join([d.id, d.bus, _fmt(d.penalty), rel]))
    rows["meta"].append(
        ",".join([str(case.horizon), _fmt(case.dt), str(case.t_l), str(case.t_s), _fmt(case.base_mva)])
    )

    with path.open("w", encoding="utf-8") as f:
        for name in SECTIONS:
            f.write(f"[{name}]\n# {_HEADERS[name]}\n")
            for row in rows[name]:
                f.write(row + "\n")
            f.write("\n")
    return path
