"""
Configuration and environment variables
"""
import logging
import os
import sys

from dotenv import load_dotenv

# Load environment variables
load_dotenv()


def _optional_float(name: str) -> float | None:
    raw = os.getenv(name)
    return float(raw) if raw not in (None, "") else None


def _optional_int(name: str) -> int | None:
    raw = os.getenv(name)
    return int(raw) if raw not in (None, "") else None


# Solver defaults
FAIRCONF_THREADS = os.getenv("FAIRCONF_THREADS", "1")
FAIRCONF_TIME_LIMIT = os.getenv("FAIRCONF_TIME_LIMIT")
FAIRCONF_NODE_LIMIT = os.getenv("FAIRCONF_NODE_LIMIT")
FAIRCONF_PRUNE_TOLERANCE = os.getenv("FAIRCONF_PRUNE_TOLERANCE", "1e-12")
FAIRCONF_BRUTEFORCE_CAP = os.getenv("FAIRCONF_BRUTEFORCE_CAP", "10000000")
FAIRCONF_LOG_LEVEL = os.getenv("FAIRCONF_LOG_LEVEL", "INFO")

# HTTP service
HOST = os.getenv("HOST", "0.0.0.0")
PORT = os.getenv("PORT", "8000")
ENV = os.getenv("ENV", "production")


def validate_config():
    """Validate that every FAIRCONF_* variable parses and is in range"""
    bad_vars = []

    try:
        if int(FAIRCONF_THREADS) < 1:
            bad_vars.append("FAIRCONF_THREADS (must be >= 1)")
    except ValueError:
        bad_vars.append("FAIRCONF_THREADS (not an integer)")

    try:
        limit = _optional_float("FAIRCONF_TIME_LIMIT")
        if limit is not None and limit <= 0:
            bad_vars.append("FAIRCONF_TIME_LIMIT (must be > 0)")
    except ValueError:
        bad_vars.append("FAIRCONF_TIME_LIMIT (not a number)")

    try:
        nodes = _optional_int("FAIRCONF_NODE_LIMIT")
        if nodes is not None and nodes < 1:
            bad_vars.append("FAIRCONF_NODE_LIMIT (must be >= 1)")
    except ValueError:
        bad_vars.append("FAIRCONF_NODE_LIMIT (not an integer)")

    try:
        if float(FAIRCONF_PRUNE_TOLERANCE) < 0:
            bad_vars.append("FAIRCONF_PRUNE_TOLERANCE (must be >= 0)")
    except ValueError:
        bad_vars.append("FAIRCONF_PRUNE_TOLERANCE (not a number)")

    try:
        if int(FAIRCONF_BRUTEFORCE_CAP) < 1:
            bad_vars.append("FAIRCONF_BRUTEFORCE_CAP (must be >= 1)")
    except ValueError:
        bad_vars.append("FAIRCONF_BRUTEFORCE_CAP (not an integer)")

    if logging.getLevelName(FAIRCONF_LOG_LEVEL.upper()) not in range(0, 51):
        bad_vars.append("FAIRCONF_LOG_LEVEL (unknown level name)")

    if bad_vars:
        error_msg = f"Invalid environment variables: {', '.join(bad_vars)}"
        raise ValueError(error_msg)


def worker_count() -> int:
    return int(FAIRCONF_THREADS)


def bruteforce_cap() -> int:
    return int(FAIRCONF_BRUTEFORCE_CAP)


def default_solve_config():
    """SolveConfig populated from the environment"""
    # Import here to avoid circular dependency
    from model import SolveConfig

    return SolveConfig(
        time_limit=_optional_float("FAIRCONF_TIME_LIMIT"),
        node_limit=_optional_int("FAIRCONF_NODE_LIMIT"),
        worker_count=worker_count(),
        deterministic=False,
        prune_tolerance=float(FAIRCONF_PRUNE_TOLERANCE),
    )


def configure_logging(level: str | None = None):
    """Route all records to stderr; stdout is reserved for JSON and CSV output"""
    logging.basicConfig(
        level=(level or FAIRCONF_LOG_LEVEL).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )
