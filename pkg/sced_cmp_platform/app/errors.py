"""Excepțiile domeniului. CLI-ul le transformă în mesaje + cod de ieșire."""
from typing import Optional


class ScedError(Exception):
    """Rădăcina tuturor erorilor de dispecerizare."""


class CaseParseError(ScedError):
    def __init__(self, path: str, line_no: Optional[int], detail: str):
        self.path = path
        self.line_no = line_no
        where = f"{path}:{line_no}" if line_no is not None else path
        super().__init__(f"{where}: {detail}")


class CaseValidationError(ScedError):
    pass


class EmptyRampIntervalError(ScedError):
    def __init__(self, generator_id: str, low: float, high: float):
        self.generator_id = generator_id
        super().__init__(
            f"empty ramp interval for generator {generator_id}: [{low:.6g}, {high:.6g}]"
        )


class PeriodInfeasibleError(ScedError):
    def __init__(self, period: int, detail: str):
        self.period = period
        super().__init__(f"period {period}: {detail}")


class EnumerationBudgetError(ScedError):
    def __init__(self, n_lines: int, budget: int):
        self.n_lines = n_lines
        super().__init__(
            f"oracle enumeration needs 3^{n_lines} LPs; budget is {budget} lines"
        )
