"""Harness-wide defaults, overridable through the environment."""

import os

DEFAULT_TOL = 1e-9
DEFAULT_MAX_BITS = 24

TOL_ENV = "ONLINESEARCH_TOL"
MAX_BITS_ENV = "ONLINESEARCH_MAX_BITS"


def default_tol() -> float:
    return float(os.environ.get(TOL_ENV, DEFAULT_TOL))


def max_bits() -> int:
    """Largest advice budget the harness will simulate (all ``2**b`` policies)."""
    return int(os.environ.get(MAX_BITS_ENV, DEFAULT_MAX_BITS))
