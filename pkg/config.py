import os

from dotenv import load_dotenv

load_dotenv()

# Numerical defaults. These never come from the environment so that every file
# written is a function of the command-line flags alone.
DEFAULT_TOL    = 1e-10
DEFAULT_METHOD = "auto"
MATHIEU_TOL    = 1e-12
CRITICAL_TOL   = 1e-12

# Operational knobs (no effect on computed numbers)
LOG_LEVEL = os.getenv("DIPOLE2D_LOG_LEVEL", "WARNING").upper()
N_JOBS    = int(os.getenv("DIPOLE2D_N_JOBS", "1"))
