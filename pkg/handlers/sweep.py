"""
Lambda sweeps over one instance, and their CSV output
"""
from __future__ import annotations

import csv
import io
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from model import Instance, SolveConfig
from services.dispatch import solve_method
from services.solution import Solution
from utils.constants import CSV_COLUMNS, METHOD_FAIRCONF, METHOD_IAM, SWEEP_METHODS

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SweepSpec:
    instance: Instance
    methods: tuple[str, ...]
    lambda1_values: tuple[float, ...] = ()
    lambda2_values: tuple[float, ...] = ()
    config: SolveConfig = field(default_factory=SolveConfig)
    iam_seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "methods", tuple(self.methods))
        object.__setattr__(self, "lambda1_values", tuple(float(v) for v in self.lambda1_values))
        object.__setattr__(self, "lambda2_values", tuple(float(v) for v in self.lambda2_values))
        if not self.methods:
            raise ValueError("a sweep needs at least one method")
        unknown = [m for m in self.methods if m not in SWEEP_METHODS]
        if unknown:
            raise ValueError(f"unknown methods {unknown}; expected a subset of {', '.join(SWEEP_METHODS)}")
        if METHOD_FAIRCONF in self.methods and not (self.lambda1_values and self.lambda2_values):
            raise ValueError("fairconf sweeps need non-empty lambda1 and lambda2 grids")
        for value in self.lambda1_values + self.lambda2_values:
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"lambda values must be finite and non-negative, got {value}")

    def points(self) -> list[tuple[str, float | None, float | None]]:
        """(method, lambda1, lambda2) in output order: methods as listed, fairconf lambda1-major"""
        points = []
        for method in self.methods:
            if method == METHOD_FAIRCONF:
                points += [(method, l1, l2) for l1 in self.lambda1_values for l2 in self.lambda2_values]
            else:
                points.append((method, None, None))
        return points


@dataclass(frozen=True, eq=False)
class SweepRow:
    method: str
    lambda1: float | None
    lambda2: float | None
    solution: Solution

    def to_record(self, include_time: bool = True) -> dict:
        report = self.solution.report
        return {
            "method": self.method,
            "lambda1": self.lambda1,
            "lambda2": self.lambda2,
            "tep": report.tep,
            "ncg_mean": report.ncg_mean,
            "ncg_min": report.ncg_min,
            "ncg_max": report.ncg_max,
            "psi_p": report.psi_p,
            "nec_mean": report.nec_mean,
            "nec_min": report.nec_min,
            "nec_max": report.nec_max,
            "psi_s": report.psi_s,
            "objective": self.solution.objective,
            "optimal": self.solution.optimal,
            "nodes_explored": self.solution.nodes_explored,
            "time_ms": self.solution.time_ms if include_time else None,
        }


def run_sweep(spec: SweepSpec, point_workers: int = 1) -> list[SweepRow]:
    """
    Solve every point of a sweep.

    Args:
        spec: What to solve
        point_workers: Points solved concurrently; rows come back in spec.points() order either way

    Returns:
        One row per point; a budget-limited point yields optimal=False instead of failing
    """
    points = spec.points()
    logger.info(f"📈 Sweep: {len(points)} points over {', '.join(spec.methods)}")

    def solve_point(point):
        method, lambda1, lambda2 = point
        solution = solve_method(spec.instance, method, lambda1, lambda2, spec.config, spec.iam_seed)
        if not solution.optimal and method != METHOD_IAM:
            logger.warning(f"⚠️ {method} lambda1={lambda1} lambda2={lambda2} stopped on budget")
        return SweepRow(method, lambda1, lambda2, solution)

    if point_workers > 1:
        with ThreadPoolExecutor(max_workers=point_workers) as pool:
            rows = list(pool.map(solve_point, points))
    else:
        rows = [solve_point(point) for point in points]

    logger.info(f"✅ Sweep finished: {len(rows)} rows")
    return rows


def _format(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def rows_to_csv(rows: list[SweepRow], include_time: bool = True) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        record = row.to_record(include_time)
        writer.writerow([_format(record[column]) for column in CSV_COLUMNS])
    return buffer.getvalue()


def write_csv(path, rows: list[SweepRow], include_time: bool = True):
    text = rows_to_csv(rows, include_time)
    if str(path) == "-":
        print(text, end="")
        return
    Path(path).write_text(text, encoding="utf-8")
    logger.info(f"💾 Wrote {len(rows)} rows to {path}")
