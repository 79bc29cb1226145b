"""
Problem instance, schedules, objective weights and solver settings shared by every module
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from utils.constants import DEFAULT_PRUNE_TOLERANCE
from utils.errors import StructuralError, ValidationError


def _frozen_matrix(values, name: str) -> np.ndarray:
    try:
        matrix = np.array(values, dtype=float)
    except (TypeError, ValueError) as e:
        raise StructuralError(f"{name} is not a numeric matrix: {e}") from e
    if matrix.ndim != 2:
        raise StructuralError(f"{name} must be 2-dimensional, got shape {matrix.shape}")
    if 0 in matrix.shape:
        raise StructuralError(f"{name} must be non-empty, got shape {matrix.shape}")
    matrix.flags.writeable = False
    return matrix


@dataclass(frozen=True)
class Labels:
    """Display names; indices stay 0-based everywhere"""

    participants: tuple[str, ...] | None = None
    talks: tuple[str, ...] | None = None
    slots: tuple[str, ...] | None = None

    def __post_init__(self):
        for name in ("participants", "talks", "slots"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, tuple(str(v) for v in value))


@dataclass(frozen=True, eq=False)
class Instance:
    """
    Participant-by-talk interest and participant-by-slot availability, both probabilities.

    Counts are inferred from the matrix shapes. Matrices are copied and frozen on
    construction, so an Instance can be shared read-only between workers.
    """

    interest: np.ndarray
    availability: np.ndarray
    labels: Labels | None = None

    def __post_init__(self):
        interest = _frozen_matrix(self.interest, "interest")
        availability = _frozen_matrix(self.availability, "availability")
        if interest.shape[0] != availability.shape[0]:
            raise StructuralError(
                f"interest has {interest.shape[0]} participant rows but "
                f"availability has {availability.shape[0]}"
            )
        object.__setattr__(self, "interest", interest)
        object.__setattr__(self, "availability", availability)

    @property
    def participant_count(self) -> int:
        return self.interest.shape[0]

    @property
    def talk_count(self) -> int:
        return self.interest.shape[1]

    @property
    def slot_count(self) -> int:
        return self.availability.shape[1]

    @cached_property
    def gain(self) -> np.ndarray:
        """n x l matrix G[t, s] = sum_p V_p(t) * A_p(s), the crowd talk t draws in slot s"""
        gain = self.interest.T @ self.availability
        gain.flags.writeable = False
        return gain

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            np.array_equal(self.interest, other.interest)
            and np.array_equal(self.availability, other.availability)
            and self.labels == other.labels
        )

    __hash__ = None


@dataclass(frozen=True)
class Schedule:
    """Entry i is the 0-based slot of talk i"""

    assignment: tuple[int, ...]

    def __post_init__(self):
        try:
            values = tuple(int(v) for v in self.assignment)
        except (TypeError, ValueError) as e:
            raise StructuralError(f"assignment must be a sequence of integers: {e}") from e
        if any(isinstance(v, float) and not float(v).is_integer() for v in self.assignment):
            raise StructuralError("assignment entries must be integral")
        object.__setattr__(self, "assignment", values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.assignment, dtype=np.intp)

    def __len__(self):
        return len(self.assignment)


@dataclass(frozen=True)
class ObjectiveWeights:
    """
    Weights of welfare_weight * TEP/(mn) + lambda1 * (min NCG - max NCG) + lambda2 * (min NEC - max NEC).
    """

    welfare_weight: float = 1.0
    lambda1: float = 0.0
    lambda2: float = 0.0

    def __post_init__(self):
        values = (self.welfare_weight, self.lambda1, self.lambda2)
        if any(not math.isfinite(v) or v < 0 for v in values):
            raise ValueError(f"objective weights must be finite and non-negative, got {values}")
        if all(v == 0 for v in values):
            raise ValueError("at least one objective weight must be positive")

    @classmethod
    def swm(cls) -> ObjectiveWeights:
        return cls(1.0, 0.0, 0.0)

    @classmethod
    def pfair(cls) -> ObjectiveWeights:
        return cls(0.0, 1.0, 0.0)

    @classmethod
    def sfair(cls) -> ObjectiveWeights:
        return cls(0.0, 0.0, 1.0)

    @classmethod
    def fairconf(cls, lambda1: float, lambda2: float) -> ObjectiveWeights:
        return cls(1.0, lambda1, lambda2)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.welfare_weight, self.lambda1, self.lambda2)


@dataclass(frozen=True)
class SolveConfig:
    time_limit: float | None = None
    node_limit: int | None = None
    worker_count: int = 1
    deterministic: bool = False
    prune_tolerance: float = DEFAULT_PRUNE_TOLERANCE

    def __post_init__(self):
        if self.worker_count < 1:
            raise ValueError(f"worker_count must be >= 1, got {self.worker_count}")
        if not self.prune_tolerance >= 0:
            raise ValueError(f"prune_tolerance must be >= 0, got {self.prune_tolerance}")
        if self.time_limit is not None and not self.time_limit > 0:
            raise ValueError(f"time_limit must be > 0, got {self.time_limit}")
        if self.node_limit is not None and self.node_limit < 1:
            raise ValueError(f"node_limit must be >= 1, got {self.node_limit}")


@dataclass(frozen=True)
class Violation:
    """One entry of a validation report"""

    kind: str  # "range", "size", "labels" or "degenerate"
    message: str
    participant: int | None = None
    talk: int | None = None
    slot: int | None = None


def _range_violations(matrix: np.ndarray, name: str, column_kind: str) -> list[Violation]:
    bad = ~((matrix >= 0.0) & (matrix <= 1.0))  # NaN fails both comparisons
    violations = []
    for row, col in zip(*np.nonzero(bad)):
        violations.append(
            Violation(
                kind="range",
                message=f"{name}[{row}][{col}] = {float(matrix[row, col])!r} is outside [0, 1]",
                participant=int(row),
                **{column_kind: int(col)},
            )
        )
    return violations


def validate(instance: Instance, strict: bool = True) -> list[Violation]:
    """
    Check an instance against its domain constraints.

    Args:
        instance: Instance to check
        strict: Also require every ideal cumulative gain and ideal expected crowd to be positive

    Returns:
        List of violations; empty when the instance is valid
    """
    if instance.interest.shape[0] != instance.availability.shape[0]:
        raise StructuralError("interest and availability disagree on the participant count")

    violations = _range_violations(instance.interest, "interest", "talk")
    violations += _range_violations(instance.availability, "availability", "slot")

    if instance.talk_count > instance.slot_count:
        violations.append(
            Violation(
                kind="size",
                message=f"{instance.talk_count} talks cannot fit into {instance.slot_count} slots",
            )
        )

    labels = instance.labels
    if labels is not None:
        expected = {
            "participants": instance.participant_count,
            "talks": instance.talk_count,
            "slots": instance.slot_count,
        }
        for name, count in expected.items():
            names = getattr(labels, name)
            if names is not None and len(names) != count:
                violations.append(
                    Violation(kind="labels", message=f"{len(names)} {name} labels for {count} {name}")
                )

    if strict and not violations:
        # ICG_p > 0 iff p has some interest and some availability; IEC_t > 0 iff some
        # participant interested in t is available somewhere.
        interest, availability = instance.interest, instance.availability
        for p in range(instance.participant_count):
            if interest[p].max() <= 0 or availability[p].max() <= 0:
                violations.append(
                    Violation(
                        kind="degenerate",
                        message=f"participant {p} has zero ideal cumulative gain",
                        participant=p,
                    )
                )
        iec = instance.gain.max(axis=1)
        for t in np.nonzero(iec <= 0)[0]:
            violations.append(
                Violation(
                    kind="degenerate",
                    message=f"talk {t} has zero ideal expected crowd",
                    talk=int(t),
                )
            )

    return violations


def require_valid(instance: Instance):
    """Raise ValidationError unless the instance passes strict validation"""
    violations = validate(instance, strict=True)
    if violations:
        raise ValidationError(violations)


def is_valid_schedule(instance: Instance, schedule: Schedule | Sequence[int]) -> bool:
    """True iff every talk has a distinct in-range slot"""
    assignment = schedule.assignment if isinstance(schedule, Schedule) else tuple(schedule)
    if len(assignment) != instance.talk_count:
        return False
    try:
        if any(int(s) != s for s in assignment):
            return False
    except (TypeError, ValueError):
        return False
    if any(s < 0 or s >= instance.slot_count for s in assignment):
        return False
    return len(set(assignment)) == len(assignment)


def require_schedule(instance: Instance, schedule: Schedule):
    if not is_valid_schedule(instance, schedule):
        raise StructuralError(
            f"assignment {list(schedule.assignment)} is not an injective mapping of "
            f"{instance.talk_count} talks into {instance.slot_count} slots"
        )
