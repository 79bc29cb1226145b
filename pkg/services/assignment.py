"""
Welfare-only schedules: optimal assignment (SWM) and interest-availability matching (IAM)
"""
import logging
import time

import numpy as np
from scipy.optimize import linear_sum_assignment

from model import Instance, ObjectiveWeights, Schedule, require_valid
from services.solution import Solution, build_solution
from utils.constants import METHOD_IAM, METHOD_SWM

logger = logging.getLogger(__name__)


def swm_assignment(gain: np.ndarray) -> np.ndarray:
    """Maximum-weight injective assignment of the rows (talks) of an n x l gain matrix to columns"""
    rows, cols = linear_sum_assignment(gain, maximize=True)
    assignment = np.empty(gain.shape[0], dtype=np.intp)
    assignment[rows] = cols
    return assignment


def iam_assignment(instance: Instance, seed: int | None = None) -> np.ndarray:
    """
    Rank talks by overall interest and slots by overall availability, then match rank to rank.

    Args:
        instance: Instance to schedule
        seed: Shuffles ties when given; ties fall back to ascending index otherwise

    Returns:
        Slot index per talk
    """
    n, l = instance.talk_count, instance.slot_count
    interest_score = instance.interest.sum(axis=0)
    availability_score = instance.availability.sum(axis=0)

    if seed is None:
        talk_ties, slot_ties = np.arange(n), np.arange(l)
    else:
        rng = np.random.default_rng(seed)
        talk_ties, slot_ties = rng.permutation(n), rng.permutation(l)

    # lexsort sorts by the last key first
    talk_rank = np.lexsort((talk_ties, -interest_score))
    slot_rank = np.lexsort((slot_ties, -availability_score))

    assignment = np.empty(n, dtype=np.intp)
    assignment[talk_rank] = slot_rank[:n]
    return assignment


def solve_swm(instance: Instance) -> Solution:
    """Schedule maximising total expected participation"""
    require_valid(instance)
    started = time.perf_counter()
    assignment = swm_assignment(instance.gain)
    return build_solution(
        instance,
        Schedule(tuple(assignment)),
        ObjectiveWeights.swm(),
        method=METHOD_SWM,
        optimal=True,
        nodes_explored=0,
        elapsed=time.perf_counter() - started,
    )


def solve_iam(instance: Instance, seed: int | None = None) -> Solution:
    """Interest-availability rank matching; proves nothing in general"""
    require_valid(instance)
    started = time.perf_counter()
    assignment = iam_assignment(instance, seed)
    return build_solution(
        instance,
        Schedule(tuple(assignment)),
        ObjectiveWeights.swm(),
        method=METHOD_IAM,
        optimal=False,
        nodes_explored=0,
        elapsed=time.perf_counter() - started,
    )
