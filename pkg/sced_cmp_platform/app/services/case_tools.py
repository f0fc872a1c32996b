"""Transformări pure pe Case: scalarea consumului și agregarea seriilor."""
from typing import Sequence, Tuple

import numpy as np

from ..models.network import Case


def scale_loads(case: Case, factor: float) -> Case:
    """Înmulțește toate seriile de consum cu `factor` (scenariu de contingență)."""
    if not factor > 0:
        raise ValueError("load scale factor must be positive")
    if factor == 1.0:
        return case
    loads = tuple(
        d.model_copy(update={"demand": tuple(v * factor for v in d.demand)}) for d in case.loads
    )
    return case.model_copy(update={"loads": loads})


def aggregate_series(values: Sequence[float], factor: int) -> Tuple[float, ...]:
    """Media pe grupuri consecutive de `factor` eșantioane (ex. 5 min -> 15 min)."""
    if factor < 1:
        raise ValueError("aggregation factor must be >= 1")
    arr = np.asarray(values, dtype=float)
    if arr.size % factor:
        raise ValueError(f"series length {arr.size} is not a multiple of {factor}")
    return tuple(float(v) for v in arr.reshape(-1, factor).mean(axis=1))


def aggregate_case(case: Case, factor: int) -> Case:
    """Agregă toate seriile; orizontul și dt se scalează cu același factor."""
    if factor == 1:
        return case
    renewables = tuple(
        r.model_copy(update={"availability": aggregate_series(r.availability, factor)})
        for r in case.renewables
    )
    loads = tuple(
        d.model_copy(update={"demand": aggregate_series(d.demand, factor)}) for d in case.loads
    )
    # rampele sunt pe perioadă
    generators = tuple(
        g.model_copy(update={"ramp_min": g.ramp_min * factor, "ramp_max": g.ramp_max * factor})
        for g in case.generators
    )
    return Case(
        buses=case.buses,
        lines=case.lines,
        generators=generators,
        renewables=renewables,
        loads=loads,
        horizon=case.horizon // factor,
        dt=case.dt * factor,
        t_l=max(1, case.t_l // factor),
        t_s=max(1, case.t_s // factor),
        base_mva=case.base_mva,
    )


def with_dt(case: Case, dt: float) -> Case:
    if not dt > 0:
        raise ValueError("dt must be positive")
    return case.model_copy(update={"dt": dt})
