import logging
import sys
from typing import Optional

from pythonjsonlogger.json import JsonFormatter

from ..config import log_level_from_env

_HANDLER_NAME = "sced_cmp_json"


def configure_logging(level: Optional[int] = None) -> None:
    """Un singur handler JSON pe stderr; apelat din CLI, idempotent."""
    root = logging.getLogger("sced_cmp_platform")
    root.setLevel(level if level is not None else log_level_from_env())
    for existing in root.handlers:
        if existing.get_name() == _HANDLER_NAME:
            # CliRunner schimbă stderr între apeluri
            existing.stream = sys.stderr
            return
    handler = logging.StreamHandler(sys.stderr)
    handler.set_name(_HANDLER_NAME)
    handler.setFormatter(
        JsonFormatter("%(asctime)s %(levelname)s %(name)s %(message)s")
    )
    root.addHandler(handler)
    root.propagate = False
