"""
Satisfaction, welfare and fairness metrics of a schedule
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from model import Instance, ObjectiveWeights, Schedule, Violation, require_schedule
from utils.errors import ValidationError


@dataclass(frozen=True, eq=False)
class MetricsReport:
    cg: np.ndarray
    icg: np.ndarray
    ncg: np.ndarray
    ec: np.ndarray
    iec: np.ndarray
    nec: np.ndarray
    tep: float
    psi_p: float
    psi_s: float

    @property
    def ncg_mean(self) -> float:
        return float(self.ncg.mean())

    @property
    def ncg_min(self) -> float:
        return float(self.ncg.min())

    @property
    def ncg_max(self) -> float:
        return float(self.ncg.max())

    @property
    def nec_mean(self) -> float:
        return float(self.nec.mean())

    @property
    def nec_min(self) -> float:
        return float(self.nec.min())

    @property
    def nec_max(self) -> float:
        return float(self.nec.max())

    def to_dict(self) -> dict:
        return {
            "ncg": self.ncg.tolist(),
            "nec": self.nec.tolist(),
            "tep": self.tep,
            "psi_p": self.psi_p,
            "psi_s": self.psi_s,
            "ncg_mean": self.ncg_mean,
            "nec_mean": self.nec_mean,
            "ncg_min": self.ncg_min,
            "ncg_max": self.ncg_max,
            "nec_min": self.nec_min,
            "nec_max": self.nec_max,
        }


def ideal_gains(instance: Instance, strict: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """
    Ideal cumulative gain per participant and ideal expected crowd per talk.

    ICG pairs each participant's interests, sorted descending, with their top-n
    availabilities, sorted descending (the rearrangement optimum). IEC is the best
    single slot for each talk.

    Args:
        instance: Instance to evaluate
        strict: Raise ValidationError when any ICG or IEC is zero

    Returns:
        (icg, iec) as float vectors of length m and n
    """
    n = instance.talk_count
    interest_desc = -np.sort(-instance.interest, axis=1)
    availability_desc = -np.sort(-instance.availability, axis=1)[:, :n]
    icg = (interest_desc * availability_desc).sum(axis=1)
    iec = instance.gain.max(axis=1)

    if strict:
        violations = [
            Violation(kind="degenerate", message=f"participant {p} has zero ideal cumulative gain", participant=int(p))
            for p in np.nonzero(icg <= 0)[0]
        ]
        violations += [
            Violation(kind="degenerate", message=f"talk {t} has zero ideal expected crowd", talk=int(t))
            for t in np.nonzero(iec <= 0)[0]
        ]
        if violations:
            raise ValidationError(violations)
    return icg, iec


def gains_batch(instance: Instance, assignments: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Cumulative gains and expected crowds for many complete assignments at once.

    Args:
        instance: Instance to evaluate
        assignments: K x n integer array, row k is one assignment

    Returns:
        (cg, ec) with shapes K x m and K x n
    """
    assignments = np.asarray(assignments, dtype=np.intp)
    chosen = instance.availability[:, assignments]  # m x K x n
    products = instance.interest[:, None, :] * chosen
    return products.sum(axis=2).T, products.sum(axis=0)


def objective_batch(
    weights: ObjectiveWeights,
    tep: np.ndarray,
    ncg: np.ndarray,
    nec: np.ndarray,
    m: int,
    n: int,
) -> np.ndarray:
    """Joint objective for K schedules given their TEP (K), NCG (K x m) and NEC (K x n)"""
    value = weights.welfare_weight * tep / (m * n)
    if weights.lambda1:
        value = value + weights.lambda1 * (ncg.min(axis=1) - ncg.max(axis=1))
    if weights.lambda2:
        value = value + weights.lambda2 * (nec.min(axis=1) - nec.max(axis=1))
    return value


def evaluate(instance: Instance, schedule: Schedule) -> MetricsReport:
    """
    Every metric of a schedule.

    Raises:
        StructuralError: the schedule is not an injective in-range assignment
        ValidationError: the instance has a zero ICG or IEC
    """
    require_schedule(instance, schedule)
    icg, iec = ideal_gains(instance)
    cg, ec = gains_batch(instance, schedule.as_array()[None, :])
    cg, ec = cg[0], ec[0]
    ncg = np.clip(cg / icg, 0.0, 1.0)
    nec = np.clip(ec / iec, 0.0, 1.0)
    for array in (cg, icg, ncg, ec, iec, nec):
        array.flags.writeable = False
    return MetricsReport(
        cg=cg,
        icg=icg,
        ncg=ncg,
        ec=ec,
        iec=iec,
        nec=nec,
        tep=float(cg.sum()),
        psi_p=float(ncg.max() - ncg.min()),
        psi_s=float(nec.max() - nec.min()),
    )


def _check_eps(eps: float):
    if not eps >= 0:
        raise ValueError(f"eps must be non-negative, got {eps}")


def is_eps_fair_participants(report: MetricsReport, eps: float) -> bool:
    """True iff every pair of participant satisfactions is within eps"""
    _check_eps(eps)
    return report.psi_p <= eps


def is_eps_fair_speakers(report: MetricsReport, eps: float) -> bool:
    """True iff every pair of speaker satisfactions is within eps"""
    _check_eps(eps)
    return report.psi_s <= eps


def joint_objective(report: MetricsReport, weights: ObjectiveWeights, m: int, n: int) -> float:
    value = weights.welfare_weight * report.tep / (m * n)
    value += weights.lambda1 * (report.ncg_min - report.ncg_max)
    value += weights.lambda2 * (report.nec_min - report.nec_max)
    return float(value)
