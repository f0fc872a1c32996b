import logging
import math
import os
from pathlib import Path

# -------------------------------------------------------------------------
# CONFIG GENERALĂ + PATH-URI
# -------------------------------------------------------------------------
BASE_DIR = Path(__file__).resolve().parents[1]
DATA_DIR = BASE_DIR / "data"
SAMPLE_CASE = DATA_DIR / "two_bus.case"

LOG_ENV_VAR = "CMP_SCED_LOG"

# -------------------------------------------------------------------------
# SOLVER QP
# -------------------------------------------------------------------------
SOLVER_TOL = 1e-8
SOLVER_MAX_ITERS = 100
# infezabil = reziduul primal rămâne peste prag atâtea iterații la rând
INFEASIBLE_FLOOR = 1e-6
INFEASIBLE_STALL_ITERS = 10

# -------------------------------------------------------------------------
# MODEL DISPECER
# -------------------------------------------------------------------------
DEFAULT_BASE_MVA = 100.0
DEFAULT_THETA_BOUND = math.pi / 2
# toleranța (MW) la clasificarea fluxurilor venite din solver
ZONE_TOL = 1e-6

# -------------------------------------------------------------------------
# DCA
# -------------------------------------------------------------------------
DEFAULT_EPSILON = 0.1
DEFAULT_GAMMA_L = 0.5
DEFAULT_GAMMA_S = 0.5
DEFAULT_PROX = 1e-3
DEFAULT_TOL_OBJ = 1e-6
DEFAULT_TOL_X = 1e-4
DEFAULT_MAX_ITERS = 50

# -------------------------------------------------------------------------
# GRID SEARCH + ORACLE
# -------------------------------------------------------------------------
GRID_EPSILONS = (1e-4, 1e-3, 1e-2, 1e-1, 1e0)
GRID_GAMMAS = tuple(round(0.1 * k, 1) for k in range(1, 11))
ORACLE_MAX_LINES = 12


def log_level_from_env() -> int:
    name = os.environ.get(LOG_ENV_VAR, "info").strip().upper()
    return getattr(logging, name, logging.INFO)
