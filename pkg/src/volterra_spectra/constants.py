"""Shared caps, defaults and tolerances.

Unit tests, the acceptance suite and the ``verify`` command all read from here,
so a tolerance is changed in exactly one place.
"""

import os

MAX_KERNEL_POWER = 50
MAX_PENCIL_POWER = 12
MAX_POLY_DEGREE = 128
MAX_GRID = 8000

DEFAULT_GRID = int(os.environ.get("VOLTERRA_M", "1000"))
VERIFY_GRID = {"fast": 500, "full": 2000}

# pencil solve
PENCIL_CONTAMINATION = 1e-8
PENCIL_MULTIPLICITY_RTOL = 1e-9

# root finding
ROOT_ABS_TOL = 1e-13
ROOT_MAX_ITER = 200
ROOT_BISECT_TOL = 1e-6
COT_BRACKET_DELTA = 1e-9

# numerical range
CURVE_SAMPLES = 2048
HULL_MIN_SAMPLES = 512

# accretivity
ACCRETIVE_SLACK = 1e-6
BOUNDARY_EXCLUSION = 0.05

# acceptance tolerances
TOL_PENCIL_CLOSED_FORM = 1e-10
TOL_EIGENPAIR_RESIDUAL = 1e-8
TOL_RHO = 1e-8
TOL_ROOT_RESIDUAL = 1e-12
RTOL_IMV_FAMILY = 2e-2
RTOL_REV2_FAMILY = 1e-2
TOL_HS_RATIO = 1e-15
RTOL_HS_DISCRETE = 1e-2
SANDWICH_SLACK = 1e-3
TOL_TABLE_IN_BOUNDS = 1e-12
RTOL_TABLE_DISCRETE = 1e-2
TOL_SQUARE_IDENTITY = 1e-15
SQUARE_SLACK = 1e-3
TOL_RANGE_CLOSED_FORM = 1e-10
TOL_BROWN_REGION = 2e-2
TOL_RAYLEIGH_PROBE = 1e-12
RTOL_DOUBLE_INTEGRAL = 1e-6

# reference values quoted for comparison (closed forms are recomputed in code)
RHO_REFERENCE = 1.199678640
