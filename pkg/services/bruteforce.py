"""
Exhaustive enumeration oracle for small instances
"""
import itertools
import logging
import math
import time

import numpy as np

import config as settings
from model import Instance, ObjectiveWeights, Schedule, require_valid
from services.metrics import gains_batch, ideal_gains, objective_batch
from services.solution import Solution, build_solution
from utils.constants import METHOD_BRUTEFORCE
from utils.errors import SizeLimitError

logger = logging.getLogger(__name__)

CHUNK_SIZE = 50_000


def solve_bruteforce(instance: Instance, weights: ObjectiveWeights, cap: int | None = None) -> Solution:
    """
    Maximise the joint objective over every injective assignment.

    Assignments are visited in lexicographic order and only a strictly better
    value replaces the best, so ties resolve to the lexicographically smallest.

    Raises:
        SizeLimitError: l!/(l-n)! exceeds cap (FAIRCONF_BRUTEFORCE_CAP by default)
    """
    require_valid(instance)
    cap = settings.bruteforce_cap() if cap is None else cap
    m, n, l = instance.participant_count, instance.talk_count, instance.slot_count
    total = math.perm(l, n)
    if total > cap:
        raise SizeLimitError(f"{total} assignments of {n} talks into {l} slots exceed the cap of {cap}")

    started = time.perf_counter()
    icg, iec = ideal_gains(instance)
    best_value, best_assignment = -np.inf, None
    permutations = itertools.permutations(range(l), n)

    while True:
        chunk = np.array(list(itertools.islice(permutations, CHUNK_SIZE)), dtype=np.intp)
        if len(chunk) == 0:
            break
        chunk = chunk.reshape(len(chunk), n)
        cg, ec = gains_batch(instance, chunk)
        values = objective_batch(
            weights,
            cg.sum(axis=1),
            np.clip(cg / icg, 0.0, 1.0),
            np.clip(ec / iec, 0.0, 1.0),
            m,
            n,
        )
        top = int(np.argmax(values))
        if values[top] > best_value:
            best_value, best_assignment = float(values[top]), chunk[top]

    logger.info(f"🔎 Enumerated {total} assignments")
    return build_solution(
        instance,
        Schedule(tuple(int(s) for s in best_assignment)),
        weights,
        method=METHOD_BRUTEFORCE,
        optimal=True,
        nodes_explored=total,
        elapsed=time.perf_counter() - started,
    )
