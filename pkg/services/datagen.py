"""
Instance generators: interest/availability patterns, seeded uniform draws,
two-group scenarios and the three small counterexamples
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from model import Instance, Labels
from utils.constants import (
    AVAILABILITY_PATTERN_MAX_SLOTS,
    BALANCED_SPLIT,
    GROUPED_SIZES,
    IMBALANCED_SPLIT,
)

logger = logging.getLogger(__name__)

DESCENDING = "descending"
ASCENDING = "ascending"

IDENTICAL_V1 = "identical-V1"
IDENTICAL_A1 = "identical-A1"
SEGREGATED = "segregated"

IDENTICAL_CASES = ("availability", "interest", "both")


def _check_direction(direction: str):
    if direction not in (DESCENDING, ASCENDING):
        raise ValueError(f"direction must be '{DESCENDING}' or '{ASCENDING}', got {direction!r}")


def pattern_interest(direction: str, n: int) -> np.ndarray:
    """Power law halving from 1 (descending), or its reverse"""
    _check_direction(direction)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    values = 2.0 ** -np.arange(n)
    return values if direction == DESCENDING else values[::-1].copy()


def pattern_availability(direction: str, l: int) -> np.ndarray:
    """cos(j * pi / 30) for j = 0..l-1 (descending), or its reverse"""
    _check_direction(direction)
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    if l > AVAILABILITY_PATTERN_MAX_SLOTS:
        raise ValueError(f"availability pattern is defined for at most {AVAILABILITY_PATTERN_MAX_SLOTS} slots, got {l}")
    values = np.cos(np.arange(l) * math.pi / 30)
    return values if direction == DESCENDING else values[::-1].copy()


def _uniform_stream(seed: int, count: int) -> np.ndarray:
    """
    count doubles in [0, 1) from PCG64 (XSL-RR 128/64, numpy's documented default
    constants) via the top 53 bits of each raw 64-bit output.
    """
    raw = np.random.PCG64(seed).random_raw(count)
    return (raw >> np.uint64(11)).astype(np.float64) * 2.0**-53


def gen_uniform(m: int, n: int, l: int, seed: int) -> Instance:
    """
    Every interest and availability entry uniform on [0, 1).

    The stream fills the interest matrix row by row, then the availability matrix.
    """
    if min(m, n, l) < 1:
        raise ValueError(f"sizes must be positive, got m={m} n={n} l={l}")
    if n > l:
        raise ValueError(f"{n} talks cannot fit into {l} slots")
    stream = _uniform_stream(seed, m * n + m * l)
    interest = stream[: m * n].reshape(m, n)
    availability = stream[m * n :].reshape(m, l)
    logger.debug(f"Generated uniform instance m={m} n={n} l={l} seed={seed}")
    return Instance(interest, availability)


def gen_identical(m: int, n: int, l: int, seed: int, identical: str = "both") -> Instance:
    """
    Seeded uniform instance whose participants share one availability row, one
    interest row, or both (the cases where rank matching maximises welfare).
    """
    if identical not in IDENTICAL_CASES:
        raise ValueError(f"identical must be one of {IDENTICAL_CASES}, got {identical!r}")
    base = gen_uniform(m, n, l, seed)
    interest, availability = np.array(base.interest), np.array(base.availability)
    if identical in ("interest", "both"):
        interest[:] = interest[0]
    if identical in ("availability", "both"):
        availability[:] = availability[0]
    return Instance(interest, availability)


@dataclass(frozen=True)
class GroupScenario:
    """
    Two participant groups: rows [0, split) and [split, m).

    Exactly one of interest_mode and availability_mode is "segregated"; the other
    dimension uses the descending pattern for every participant.
    """

    sizes: tuple[int, int, int] = GROUPED_SIZES
    split: int = BALANCED_SPLIT
    interest_mode: str = IDENTICAL_V1
    availability_mode: str = SEGREGATED

    def __post_init__(self):
        m, n, l = self.sizes
        if min(m, n, l) < 1:
            raise ValueError(f"sizes must be positive, got {self.sizes}")
        if n > l:
            raise ValueError(f"{n} talks cannot fit into {l} slots")
        if not 0 < self.split < m:
            raise ValueError(f"split must satisfy 0 < split < {m}, got {self.split}")
        if self.interest_mode not in (IDENTICAL_V1, SEGREGATED):
            raise ValueError(f"unknown interest_mode {self.interest_mode!r}")
        if self.availability_mode not in (IDENTICAL_A1, SEGREGATED):
            raise ValueError(f"unknown availability_mode {self.availability_mode!r}")
        if (self.interest_mode == SEGREGATED) == (self.availability_mode == SEGREGATED):
            raise ValueError("exactly one of interest_mode and availability_mode must be segregated")


def _two_group_rows(first: np.ndarray, second: np.ndarray, m: int, split: int) -> np.ndarray:
    return np.vstack([np.tile(first, (split, 1)), np.tile(second, (m - split, 1))])


def gen_grouped(scenario: GroupScenario) -> Instance:
    m, n, l = scenario.sizes
    v1, v2 = pattern_interest(DESCENDING, n), pattern_interest(ASCENDING, n)
    a1, a2 = pattern_availability(DESCENDING, l), pattern_availability(ASCENDING, l)

    if scenario.interest_mode == SEGREGATED:
        interest = _two_group_rows(v1, v2, m, scenario.split)
    else:
        interest = np.tile(v1, (m, 1))
    if scenario.availability_mode == SEGREGATED:
        availability = _two_group_rows(a1, a2, m, scenario.split)
    else:
        availability = np.tile(a1, (m, 1))
    return Instance(interest, availability)


# Named scenarios, keyed the way the CLI spells them
GROUPED_PATTERNS = {
    "seg-avail-balanced": GroupScenario(split=BALANCED_SPLIT, interest_mode=IDENTICAL_V1, availability_mode=SEGREGATED),
    "seg-avail-imbalanced": GroupScenario(split=IMBALANCED_SPLIT, interest_mode=IDENTICAL_V1, availability_mode=SEGREGATED),
    "seg-interest-balanced": GroupScenario(split=BALANCED_SPLIT, interest_mode=SEGREGATED, availability_mode=IDENTICAL_A1),
    "seg-interest-imbalanced": GroupScenario(split=IMBALANCED_SPLIT, interest_mode=SEGREGATED, availability_mode=IDENTICAL_A1),
}


_BUILTINS = {
    "table1": (
        [[1.0], [1.0]],
        [[1.0, 0.49, 0.0], [0.0, 0.49, 1.0]],
    ),
    "table2": (
        [[1.0, 0.5]],
        [[1.0, 0.75, 0.8]],
    ),
    "table3": (
        [[1.0, 0.7], [1.0, 0.7]],
        [[1.0, 1.0, 0.0, 0.2], [1.0, 0.0, 1.0, 0.2]],
    ),
}

BUILTIN_NAMES = tuple(_BUILTINS)


def builtin(name: str) -> Instance:
    """The three small counterexample instances (table1, table2, table3)"""
    if name not in _BUILTINS:
        raise ValueError(f"unknown builtin {name!r}; expected one of {', '.join(BUILTIN_NAMES)}")
    interest, availability = _BUILTINS[name]
    m, n, l = len(interest), len(interest[0]), len(availability[0])
    labels = Labels(
        participants=tuple(f"p{i + 1}" for i in range(m)),
        talks=tuple(f"t{i + 1}" for i in range(n)),
        slots=tuple(f"s{i + 1}" for i in range(l)),
    )
    return Instance(np.array(interest), np.array(availability), labels)


def _size(value: int | None, default: int) -> int:
    return default if value is None else value


def generate(pattern: str, m: int | None = None, n: int | None = None, l: int | None = None, seed: int = 0) -> Instance:
    """
    Build an instance from a CLI/HTTP pattern name.

    Patterns: uniform, identical-availability, identical-interest, identical-both,
    the four seg-* scenarios (sizes default to 10 x 10 x 15) and table1..table3.
    """
    if pattern in _BUILTINS:
        return builtin(pattern)
    if pattern in GROUPED_PATTERNS:
        scenario = GROUPED_PATTERNS[pattern]
        if any(v is not None for v in (m, n, l)):
            default_m, default_n, default_l = scenario.sizes
            sizes = (_size(m, default_m), _size(n, default_n), _size(l, default_l))
            scenario = GroupScenario(sizes, scenario.split, scenario.interest_mode, scenario.availability_mode)
        return gen_grouped(scenario)

    m, n, l = _size(m, 10), _size(n, 10), _size(l, 10)
    if pattern == "uniform":
        return gen_uniform(m, n, l, seed)
    if pattern.startswith("identical-"):
        return gen_identical(m, n, l, seed, pattern.removeprefix("identical-"))
    raise ValueError(f"unknown pattern {pattern!r}")


PATTERN_NAMES = ("uniform",) + tuple(f"identical-{case}" for case in IDENTICAL_CASES) + tuple(GROUPED_PATTERNS) + BUILTIN_NAMES
