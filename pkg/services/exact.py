"""
Exact joint-objective scheduling: FairConf, PFair and SFair
"""
from __future__ import annotations

import logging
import time

import numpy as np

import config as settings
from model import Instance, ObjectiveWeights, Schedule, SolveConfig, require_valid
from services.assignment import iam_assignment, swm_assignment
from services.fairness_search import speaker_window_optimum, two_class_participant_optimum
from services.search import Budget, Incumbent, SearchModel, bound_batch, search
from services.solution import Solution, build_solution
from utils.constants import METHOD_FAIRCONF, METHOD_PFAIR, METHOD_SFAIR

logger = logging.getLogger(__name__)

# Slack when matching a leaf against a certified optimum
FIRST_HIT_TOLERANCE = 1e-12

# Node cap for realising a certified optimum through the ordinary search order
FIRST_HIT_NODE_CAP = 500_000


def method_for(weights: ObjectiveWeights) -> str:
    if weights.welfare_weight == 0 and weights.lambda2 == 0:
        return METHOD_PFAIR
    if weights.welfare_weight == 0 and weights.lambda1 == 0:
        return METHOD_SFAIR
    return METHOD_FAIRCONF


def _certified_optimum(model: SearchModel) -> tuple[float, np.ndarray] | None:
    """Optimal objective and a witness schedule, for the objectives with a dedicated search"""
    weights = model.weights
    if weights.welfare_weight == 0 and weights.lambda2 == 0:
        found = two_class_participant_optimum(model)
        if found is None:
            return None
        unfairness, assignment = found
        return -weights.lambda1 * unfairness, assignment
    if weights.welfare_weight == 0 and weights.lambda1 == 0:
        unfairness, assignment = speaker_window_optimum(model)
        return -weights.lambda2 * unfairness, assignment
    return None


def _seed_incumbent(model: SearchModel) -> Incumbent:
    """Best of the IAM and SWM schedules under the joint objective"""
    candidates = np.array(
        [
            model.to_prefix(iam_assignment(model.instance)),
            model.to_prefix(swm_assignment(model.gain)),
        ]
    )
    values = bound_batch(model, model.talk_order, model.talk_order[:0], candidates, depth=model.n)
    best = int(np.argmax(values))
    return Incumbent(float(values[best]), candidates[best])


def solve_exact(
    instance: Instance,
    weights: ObjectiveWeights,
    config: SolveConfig | None = None,
    method: str | None = None,
) -> Solution:
    """
    Schedule maximising the joint objective.

    Args:
        instance: Strict-valid instance
        weights: (1, l1, l2) for FairConf, (0, 1, 0) for PFair, (0, 0, 1) for SFair;
            any other non-zero weights are accepted too
        config: Budgets, worker count and pruning tolerance; environment defaults when None
        method: Method tag on the returned Solution; inferred from the weights when None

    Returns:
        Solution; optimal is False when a time or node budget cut the search short
    """
    require_valid(instance)
    config = config or settings.default_solve_config()
    method = method or method_for(weights)
    started = time.perf_counter()

    workers = config.worker_count
    if config.deterministic and workers > 1:
        logger.info(f"🔎 Deterministic mode: running 1 worker instead of {workers}")
        workers = 1

    model = SearchModel(instance, weights)
    logger.info(
        f"🔎 Solving {method}: m={model.m} n={model.n} l={model.l} classes={model.class_count} "
        f"weights={weights.as_tuple()} workers={workers}"
    )

    certified = _certified_optimum(model)
    if certified is not None:
        target, witness = certified
        cap = FIRST_HIT_NODE_CAP if config.node_limit is None else min(FIRST_HIT_NODE_CAP, config.node_limit)
        incumbent = Incumbent(target - FIRST_HIT_TOLERANCE - config.prune_tolerance, None)
        result = search(
            model,
            incumbent,
            Budget(config.time_limit, cap),
            config.prune_tolerance,
            first_hit=True,
        )
        if result.prefix is not None:
            assignment = model.to_assignment(result.prefix)
        else:
            logger.info("🔎 First-hit pass ran out of budget; keeping the certified witness")
            assignment = witness
        optimal, nodes = True, result.nodes
    else:
        incumbent = _seed_incumbent(model)
        result = search(model, incumbent, Budget(config.time_limit, config.node_limit), config.prune_tolerance, workers)
        assignment = model.to_assignment(result.prefix)
        optimal, nodes = result.complete, result.nodes
        if not optimal:
            logger.warning(f"⚠️ Budget exhausted after {nodes} nodes; returning best incumbent")

    return build_solution(
        instance,
        Schedule(tuple(int(s) for s in assignment)),
        weights,
        method=method,
        optimal=optimal,
        nodes_explored=nodes,
        elapsed=time.perf_counter() - started,
    )


def solve_pfair(instance: Instance, config: SolveConfig | None = None) -> Solution:
    return solve_exact(instance, ObjectiveWeights.pfair(), config, METHOD_PFAIR)


def solve_sfair(instance: Instance, config: SolveConfig | None = None) -> Solution:
    return solve_exact(instance, ObjectiveWeights.sfair(), config, METHOD_SFAIR)


def solve_fairconf(
    instance: Instance,
    lambda1: float,
    lambda2: float,
    config: SolveConfig | None = None,
) -> Solution:
    return solve_exact(instance, ObjectiveWeights.fairconf(lambda1, lambda2), config, METHOD_FAIRCONF)
