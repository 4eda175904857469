import os
from dotenv import load_dotenv
from pathlib import Path

# Load environment variables from .env file
load_dotenv()

# Base directory of the application
BASE_DIR = Path(__file__).resolve().parent.parent

# Application settings
APP_TITLE = "Multiwell Bands"
APP_DESCRIPTION = "Low-lying energy bands of finite periodic N-well potentials"
APP_VERSION = "1.0.0"
APP_ENV = os.getenv("APP_ENV", "production")
DEBUG = APP_ENV == "development"
LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING")

# Quadrature settings
QUADRATURE_TOL = float(os.getenv("QUADRATURE_TOL", "1e-10"))
QUADRATURE_MAX_DEPTH = int(os.getenv("QUADRATURE_MAX_DEPTH", "60"))

# Root-finding and special functions
ROOT_TOL = float(os.getenv("ROOT_TOL", "1e-12"))
ROOT_MAX_ITERATIONS = 200
ELLIPTIC_TOL = float(os.getenv("ELLIPTIC_TOL", "1e-14"))
TURNING_POINT_SCAN = 2001

# Sturm bisection: tolerance is this factor times max(1, matrix norm)
STURM_REL_TOL = 1e-12
STURM_MAX_ITERATIONS = 2000

# Mathieu truncation
MATHIEU_TOL = float(os.getenv("MATHIEU_TOL", "1e-10"))
MATHIEU_MAX_DOUBLINGS = 4

# Finite-difference oracle
FD_MIN_GRID = 64
FD_BOUNDARY_THRESHOLD = 1e-6
FD_PADDING_LENGTHS = float(os.getenv("FD_PADDING_LENGTHS", "3.0"))

# Semiclassical validity diagnostics
DEEP_BARRIER_MIN_RATIO = 5.0
DELTA_SHIFT_MAX = 0.1
PERIODICITY_SAMPLES = 257
MAX_BAND_INDEX = 150

# Lattice
DEGENERACY_TOL = 1e-12

# Band verification against the FD oracle
VERIFY_RATIO_TOL = float(os.getenv("VERIFY_RATIO_TOL", "0.25"))
VERIFY_CORRELATION_MIN = 0.99
VERIFY_GAP_WIDTH_MIN = 10.0
VERIFY_CONVERGENCE_TOL = float(os.getenv("VERIFY_CONVERGENCE_TOL", "1e-3"))  # in units of hbar*omega
VERIFY_DEFAULT_GRID = 8192

# Output settings
OUTPUT_DIGITS = 17
DISPERSION_K_POINTS = 64
