import os

# --- Constants ---
# Generic symbolic adjoint grows factorially; n=3 (6x6 catalecticant) is the ceiling.
GENERIC_MAX_N = 3
GENERIC_MAX_MATRIX_SIZE = 6

DEFAULT_SEED = 0
DEFAULT_TRIALS = 0
DEFAULT_FORMAT = "text"

# Integer range for random specializations (inclusive)
RANDOM_COEFF_RANGE = (-3, 3)

# Upper bound on draws when hunting for a specialization with nonzero determinant
RANDOM_MAX_REDRAWS = 50

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'data')


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    if value is None or value == "":
        return default
    try:
        return max(1, int(value))
    except ValueError:
        return default


# Worker pool size for random trials and per-column b2 construction
MAX_WORKERS = _env_int("GORENSTEIN_MAX_WORKERS", min(8, (os.cpu_count() or 1)))

VERBOSE = os.environ.get("GORENSTEIN_VERBOSE", "").lower() in ("1", "true", "yes")
