"""
Solver output shared by every method
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

from model import Instance, ObjectiveWeights, Schedule
from services.metrics import MetricsReport, evaluate, joint_objective

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Solution:
    schedule: Schedule
    report: MetricsReport
    objective: float
    method: str
    weights: ObjectiveWeights
    optimal: bool
    nodes_explored: int
    elapsed: float

    @property
    def time_ms(self) -> float:
        return self.elapsed * 1000.0

    def to_dict(self, include_time: bool = True) -> dict:
        return {
            "assignment": list(self.schedule.assignment),
            "objective": self.objective,
            "method": self.method,
            "optimal": self.optimal,
            "nodes_explored": self.nodes_explored,
            "time_ms": self.time_ms if include_time else None,
            "weights": {
                "welfare_weight": self.weights.welfare_weight,
                "lambda1": self.weights.lambda1,
                "lambda2": self.weights.lambda2,
            },
            "metrics": self.report.to_dict(),
        }


def build_solution(
    instance: Instance,
    schedule: Schedule,
    weights: ObjectiveWeights,
    method: str,
    optimal: bool,
    nodes_explored: int,
    elapsed: float,
) -> Solution:
    """Evaluate a finished schedule and wrap it with its provenance"""
    report = evaluate(instance, schedule)
    objective = joint_objective(report, weights, instance.participant_count, instance.talk_count)
    status = "✅ optimal" if optimal else "⚠️ not proven optimal"
    logger.info(
        f"{status}: method={method} objective={objective:.10g} tep={report.tep:.10g} "
        f"nodes={nodes_explored} elapsed={elapsed:.3f}s"
    )
    return Solution(
        schedule=schedule,
        report=report,
        objective=objective,
        method=method,
        weights=weights,
        optimal=optimal,
        nodes_explored=nodes_explored,
        elapsed=elapsed,
    )
