"""Configuration constants for the character-sum laboratory."""

import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

from charmax.errors import ConfigError

# ============================================================================
# Numerical Constants
# ============================================================================

# Euler-Mascheroni constant, 30 significant digits
EULER_GAMMA_DIGITS = "0.577215664901532860606512090082"
EULER_GAMMA = float(EULER_GAMMA_DIGITS)

# Rounding budget per accumulated term of a complex double prefix sum
FLOAT_ERROR_PER_TERM = 2.0**-50

# Magnitudes below this count as an exact zero (even-character half sums, tail thresholds)
ZERO_TOLERANCE = 1e-9

# ============================================================================
# Arithmetic Limits
# ============================================================================

MAX_FACTOR_INPUT = 2**63 - 1  # factorize() domain
MAX_GROUP_MODULUS = 2**40  # dlog tables are linear in q

# ============================================================================
# Sweep Configuration
# ============================================================================

SWEEP_CHUNK_SIZE = 4096  # characters per chunk (checkpoint granularity)
BATCH_ELEMENTS = 2**22  # complex entries per vectorised batch (characters x q)

# Fourier engine: truncation Z = ceil(sqrt(q) log q), evaluated on a grid of
# FOURIER_GRID_FACTOR * Z points
FOURIER_GRID_FACTOR = 4

# Default resource ceilings (None = unlimited)
SWEEP_MAX_ROWS: Optional[int] = None
SWEEP_MAX_SECONDS: Optional[float] = None

# ============================================================================
# Analytic Cutoffs
# ============================================================================

# Below this t the integrand of A uses its Taylor series t^2/4 - t^4/64 + t^6/576
A_SERIES_CUTOFF = 1e-3
A_DEFAULT_TOLERANCE = 1e-10
GAUSS_LEGENDRE_NODES = 64  # per panel, fixed-order scheme for A
GAUSS_LEGENDRE_PANELS = 8

# Euler product cutoff P = max(PRIME_CUTOFF_MIN, PRIME_CUTOFF_FACTOR * (2k)^(1/sigma))
PRIME_CUTOFF_MIN = 10**5
PRIME_CUTOFF_FACTOR = 50
PRIME_CUTOFF_MAX = 10**8

# Sieve budget and segment length
PRIME_SIEVE_LIMIT = 10**9
PRIME_SEGMENT = 10**7

# Local factor series: stop once the geometric tail bound drops below this
LOCAL_FACTOR_TAIL = 1e-12
LOCAL_FACTOR_MAX_TERMS = 100000

# L(1, chi) truncation ceiling
L_ONE_MAX_TERMS = 10**12

# b(n) brute-force budget on q^k
B_ORACLE_BUDGET = 10**7

# Random (chi, N, L) cases drawn by the dyadic verification suite
VERIFY_DYADIC_CASES = 1000

# ============================================================================
# File Formats
# ============================================================================

TABLE_FORMAT_VERSION = 2
TABLE_MAGIC = "charmax-table"
CSV_FLOAT_FORMAT = "%.17g"
HISTOGRAM_BINS = 100
HISTOGRAM_RANGE = (0.0, 3.0)  # over M/sqrt(q)
SVG_HASH_SALT = "charmax"

# ============================================================================
# Command Line
# ============================================================================

THREADS_ENV_VAR = "CHARMAX_THREADS"


def default_threads() -> int:
    """Worker count from CHARMAX_THREADS, else the CPU count."""
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw:
        try:
            threads = int(raw)
        except ValueError as e:
            raise ConfigError(f"{THREADS_ENV_VAR}={raw!r} is not an integer") from e
        if threads < 1:
            raise ConfigError(f"{THREADS_ENV_VAR} must be positive, got {threads}")
        return threads
    return os.cpu_count() or 1


def load_overrides(path: Union[str, Path]) -> Dict[str, Any]:
    """Override module constants from a YAML mapping.

    Only existing UPPER_CASE names may be overridden.

    Args:
        path: YAML file with ``NAME: value`` pairs

    Returns:
        The mapping that was applied

    Raises:
        ConfigError: If the file is not a mapping or names an unknown constant
    """
    try:
        with open(path, "r") as f:
            data = yaml.safe_load(f) or {}
    except OSError as e:
        raise ConfigError(f"Cannot read config file {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"Config file {path} is not valid YAML: {e}") from e

    if not isinstance(data, dict):
        raise ConfigError(f"Config file {path} must contain a mapping, got {type(data).__name__}")

    module_globals = globals()
    for name, value in data.items():
        if not (isinstance(name, str) and name.isupper() and name in module_globals):
            raise ConfigError(f"Unknown configuration constant {name!r} in {path}")
        module_globals[name] = value

    return data
