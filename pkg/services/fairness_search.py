"""
Certified optima for the two pure-fairness objectives, used before branch-and-bound

- participant fairness with exactly two participant classes: psi_p of a schedule is
  |sum_t f(t, slot(t))| for a single n x l table f, so a meet-in-the-middle search over
  the two halves of the talks finds the minimum exactly
- speaker fairness: a schedule with NEC range r exists iff some window [lo, lo + r]
  admits a perfect matching of talks into slots, which a sweep over the distinct NEC
  values decides
"""
from __future__ import annotations

import itertools
import logging
import math

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from services.search import SearchModel

logger = logging.getLogger(__name__)

# Largest half-enumeration the meet-in-the-middle search accepts
HALF_ENUMERATION_CAP = 2_000_000

# Slot sets are stored as int64 bit masks
MAX_MASK_SLOTS = 62


def _half_table(table: np.ndarray, talks: np.ndarray, slot_count: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Every injective placement of the given talks: (slots K x h, value sums K, slot masks K)"""
    if len(talks) == 0:
        return np.zeros((1, 0), dtype=np.int64), np.zeros(1), np.zeros(1, dtype=np.int64)
    placements = np.array(list(itertools.permutations(range(slot_count), len(talks))), dtype=np.int64)
    sums = table[talks, placements].sum(axis=1)
    masks = (np.int64(1) << placements).sum(axis=1)
    return placements, sums, masks


def _closest_disjoint(
    left_sums: np.ndarray,
    left_masks: np.ndarray,
    right_sums: np.ndarray,
    right_masks: np.ndarray,
    direction: int,
    best: float,
) -> tuple[np.ndarray, np.ndarray, float]:
    """
    For every left half, the nearest right half (walking one way through the sorted
    right sums from -left) whose slots do not clash.

    Returns:
        (|left + right| per left row or inf, matching right index or -1, best value seen)
    """
    count = len(right_sums)
    pointer = np.searchsorted(right_sums, -left_sums, side="left")
    if direction < 0:
        pointer = pointer - 1
    found_value = np.full(len(left_sums), np.inf)
    found_index = np.full(len(left_sums), -1, dtype=np.intp)
    active = (pointer >= 0) & (pointer < count)

    while active.any():
        rows = np.flatnonzero(active)
        at = pointer[rows]
        value = np.abs(left_sums[rows] + right_sums[at])
        # |left + right| only grows from here on in this direction
        hopeless = value >= best
        disjoint = (left_masks[rows] & right_masks[at]) == 0
        hit = disjoint & ~hopeless
        if hit.any():
            found_value[rows[hit]] = value[hit]
            found_index[rows[hit]] = at[hit]
            best = min(best, float(value[hit].min()))
        pointer[rows] = at + direction
        still = ~(hopeless | disjoint) & (pointer[rows] >= 0) & (pointer[rows] < count)
        active[rows] = still

    return found_value, found_index, best


def two_class_participant_optimum(model: SearchModel) -> tuple[float, np.ndarray] | None:
    """
    Minimum participant unfairness when participants fall into exactly two classes.

    Returns:
        (minimum psi_p, a talk-indexed assignment attaining it), or None when the
        instance does not have two classes or the enumeration would be too large
    """
    n, l = model.n, model.l
    if model.class_count != 2 or l > MAX_MASK_SLOTS:
        return None
    half = n // 2
    if max(math.perm(l, half), math.perm(l, n - half)) > HALF_ENUMERATION_CAP:
        return None

    first = model.class_interest[0][:, None] * model.class_availability[0][None, :] / model.class_icg[0]
    second = model.class_interest[1][:, None] * model.class_availability[1][None, :] / model.class_icg[1]
    table = first - second

    talks = np.arange(n)
    left_talks, right_talks = talks[:half], talks[half:]
    left_slots, left_sums, left_masks = _half_table(table, left_talks, l)
    right_slots, right_sums, right_masks = _half_table(table, right_talks, l)

    order = np.argsort(right_sums, kind="stable")
    right_slots, right_sums, right_masks = right_slots[order], right_sums[order], right_masks[order]

    best = np.inf
    up_value, up_index, best = _closest_disjoint(left_sums, left_masks, right_sums, right_masks, 1, best)
    down_value, down_index, best = _closest_disjoint(left_sums, left_masks, right_sums, right_masks, -1, best)

    values = np.concatenate([up_value, down_value])
    indices = np.concatenate([up_index, down_index])
    winner = int(np.argmin(values))
    if not np.isfinite(values[winner]):
        return None
    left_row = winner % len(left_sums)

    assignment = np.empty(n, dtype=np.intp)
    assignment[left_talks] = left_slots[left_row]
    assignment[right_talks] = right_slots[indices[winner]]
    logger.info(f"🧮 Two-class participant optimum {values[winner]:.6g} from {len(left_sums)}x{len(right_sums)} halves")
    return float(values[winner]), assignment


def _window_matching(nec: np.ndarray, low: float, high: float) -> np.ndarray | None:
    edges = csr_matrix(((nec >= low) & (nec <= high)).astype(np.int8))
    matched = maximum_bipartite_matching(edges, perm_type="column")
    if (matched < 0).any():
        return None
    return np.asarray(matched, dtype=np.intp)


def speaker_window_optimum(model: SearchModel) -> tuple[float, np.ndarray]:
    """
    Minimum speaker unfairness over all schedules.

    Two pointers over the sorted distinct NEC values: the smallest feasible upper end
    never decreases as the lower end rises.

    Returns:
        (minimum psi_s, a talk-indexed assignment attaining it)
    """
    nec = model.nec_table
    values = np.unique(nec)
    best_range, best_assignment = np.inf, None
    upper = 0
    for lower in range(len(values)):
        upper = max(upper, lower)
        while upper < len(values):
            matched = _window_matching(nec, values[lower], values[upper])
            if matched is not None:
                break
            upper += 1
        if upper == len(values):
            break
        span = float(values[upper] - values[lower])
        if span < best_range:
            best_range, best_assignment = span, matched
    logger.info(f"🧮 Speaker window optimum {best_range:.6g} over {len(values)} distinct values")
    return best_range, best_assignment
