"""
Branch-and-bound over talk -> slot choices for the joint welfare/fairness objective

Nodes are prefixes of the branching order: row k of a batch holds the slots of
talks talk_order[0..d-1]. Whole sibling sets are expanded and bounded at once
with numpy, and the depth-first stack holds batches rather than single nodes.
"""
from __future__ import annotations

import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from collections.abc import Mapping, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from model import Instance, ObjectiveWeights, require_valid
from services.metrics import ideal_gains
from utils.errors import StructuralError

logger = logging.getLogger(__name__)

# Upper bound on array elements touched by one bound evaluation
BATCH_ELEMENTS = 2_000_000

# Nodes with at least this many unassigned talks get the exact assignment bound on welfare
EXACT_WELFARE_MIN_FREE = 3


class SearchModel:
    """
    Read-only arrays the bound and the search need, built once per (instance, weights).

    Participants with identical interest and availability rows are collapsed into
    classes: their NCG values coincide, so min/max over classes equals min/max over
    participants.
    """

    def __init__(self, instance: Instance, weights: ObjectiveWeights):
        self.instance = instance
        self.weights = weights
        self.m, self.n, self.l = instance.participant_count, instance.talk_count, instance.slot_count
        self.mn = self.m * self.n

        icg, iec = ideal_gains(instance)
        rows = np.hstack([instance.interest, instance.availability])
        _, first = np.unique(rows, axis=0, return_index=True)
        keep = np.sort(first)
        self.class_interest = instance.interest[keep]
        self.class_availability = instance.availability[keep]
        self.class_icg = icg[keep]
        self.class_count = len(keep)

        self.gain = instance.gain
        self.nec_table = instance.gain / iec[:, None]

        # Descending availability per class, with the slot each value came from
        self.avail_sorted_idx = np.argsort(-self.class_availability, axis=1, kind="stable")
        self.avail_sorted_vals = np.take_along_axis(self.class_availability, self.avail_sorted_idx, axis=1)

        self.talk_order = np.argsort(-instance.interest.sum(axis=0), kind="stable")
        self.slot_order = np.argsort(-instance.availability.sum(axis=0), kind="stable")

        # earlier_twin[s, s2]: s2 < s and both slots have identical availability columns
        _, column_class = np.unique(instance.availability.T, axis=0, return_inverse=True)
        column_class = np.ravel(column_class)
        same = column_class[:, None] == column_class[None, :]
        self.earlier_twin = same & (np.arange(self.l)[None, :] < np.arange(self.l)[:, None])
        self.has_twins = bool(self.earlier_twin.any())

        self._interest_desc_by_depth = [
            -np.sort(-self.class_interest[:, self.talk_order[d:]], axis=1) for d in range(self.n + 1)
        ]

    def interest_desc(self, free_talks: np.ndarray, depth: int | None = None) -> np.ndarray:
        if depth is not None:
            return self._interest_desc_by_depth[depth]
        return -np.sort(-self.class_interest[:, free_talks], axis=1)

    def to_prefix(self, assignment: np.ndarray) -> np.ndarray:
        """Talk-indexed assignment -> slots in branching order"""
        return np.asarray(assignment, dtype=np.intp)[self.talk_order]

    def to_assignment(self, prefix: np.ndarray) -> np.ndarray:
        assignment = np.empty(self.n, dtype=np.intp)
        assignment[self.talk_order] = prefix
        return assignment


def _exact_free_welfare(model: SearchModel, free_talks: np.ndarray, free: np.ndarray) -> np.ndarray:
    sub_gain = model.gain[free_talks]
    values = np.empty(free.shape[0])
    for i, mask in enumerate(free):
        block = sub_gain[:, mask]
        rows, cols = linear_sum_assignment(block, maximize=True)
        values[i] = block[rows, cols].sum()
    return values


def bound_batch(
    model: SearchModel,
    fixed_talks: np.ndarray,
    free_talks: np.ndarray,
    slots: np.ndarray,
    exact_welfare: bool = False,
    depth: int | None = None,
) -> np.ndarray:
    """
    Upper bounds on the joint objective over all completions of N partial schedules.

    Args:
        model: Precomputed search arrays
        fixed_talks: The d assigned talks
        free_talks: The n - d unassigned talks
        slots: N x d array, slots[k, i] is the slot of fixed_talks[i] in partial k
        exact_welfare: Bound the free welfare by an optimal assignment instead of
            the cheaper row/column relaxation
        depth: Set when fixed_talks is the branching-order prefix of that length

    Returns:
        N bounds; exact objective values for complete schedules
    """
    weights = model.weights
    N, d = slots.shape
    k = len(free_talks)
    used = np.zeros((N, model.l), dtype=bool)
    used[np.arange(N)[:, None], slots] = True
    free = ~used
    total = np.zeros(N)

    if weights.welfare_weight:
        welfare = model.gain[fixed_talks, slots].sum(axis=1) if d else np.zeros(N)
        if k and exact_welfare:
            welfare = welfare + _exact_free_welfare(model, free_talks, free)
        elif k:
            gain = np.where(free[:, None, :], model.gain[free_talks][None, :, :], -np.inf)
            by_talk = gain.max(axis=2).sum(axis=1)
            by_slot = -np.sort(-gain.max(axis=1), axis=1)[:, :k].sum(axis=1)
            welfare = welfare + np.minimum(by_talk, by_slot)
        total += weights.welfare_weight * welfare / model.mn

    if weights.lambda1:
        C = model.class_count
        chosen = model.class_availability[:, slots]  # C x N x d
        fixed_cg = (chosen * model.class_interest[:, fixed_talks][:, None, :]).sum(axis=2).T
        if k:
            # Rearrangement: the best completion for a class pairs its largest free
            # interests with its largest free availabilities, the worst with the smallest.
            interest_desc = model.interest_desc(free_talks, depth)
            free_sorted = free[:, model.avail_sorted_idx]  # N x C x l
            values = np.broadcast_to(model.avail_sorted_vals, free_sorted.shape)[free_sorted]
            values = values.reshape(N, C, model.l - d)
            high = fixed_cg + (values[:, :, :k] * interest_desc).sum(axis=2)
            low = fixed_cg + (values[:, :, ::-1][:, :, :k] * interest_desc).sum(axis=2)
        else:
            high = low = fixed_cg
        high = high / model.class_icg
        low = low / model.class_icg
        total += weights.lambda1 * np.minimum(0.0, high.min(axis=1) - low.max(axis=1))

    if weights.lambda2:
        if d:
            fixed_nec = model.nec_table[fixed_talks, slots]
            assigned_min, assigned_max = fixed_nec.min(axis=1), fixed_nec.max(axis=1)
        else:
            assigned_min, assigned_max = np.full(N, np.inf), np.full(N, -np.inf)
        if k:
            nec = model.nec_table[free_talks][None, :, :]
            nec_high = np.where(free[:, None, :], nec, -np.inf).max(axis=2)
            nec_low = np.where(free[:, None, :], nec, np.inf).min(axis=2)
            term = np.minimum(
                0.0,
                np.minimum(assigned_min, nec_high.min(axis=1)) - np.maximum(assigned_max, nec_low.max(axis=1)),
            )
            if d:
                # every free talk lands somewhere, stretching [assigned_min, assigned_max]
                span = np.maximum(assigned_max[:, None, None], nec) - np.minimum(assigned_min[:, None, None], nec)
                span = np.where(free[:, None, :], span, np.inf).min(axis=2).max(axis=1)
                term = np.minimum(term, -span)
        else:
            term = assigned_min - assigned_max
        total += weights.lambda2 * term

    return total


def bound_partial(
    instance: Instance,
    weights: ObjectiveWeights,
    partial: Sequence[int] | Mapping[int, int],
) -> float:
    """
    Upper bound on the joint objective over every completion of a partial schedule.

    Args:
        instance: Instance being scheduled
        weights: Objective weights
        partial: Either a sequence (talk i -> partial[i] for the first len(partial)
            talks) or a mapping from talk index to slot index

    Returns:
        The bound; equals the objective when the partial schedule is complete

    Raises:
        StructuralError: partial assigns a talk twice, reuses a slot or is out of range
    """
    require_valid(instance)
    if isinstance(partial, Mapping):
        items = {int(t): int(s) for t, s in partial.items()}
    else:
        items = {t: int(s) for t, s in enumerate(partial)}

    if any(t < 0 or t >= instance.talk_count for t in items):
        raise StructuralError(f"partial names talks outside 0..{instance.talk_count - 1}")
    if any(s < 0 or s >= instance.slot_count for s in items.values()):
        raise StructuralError(f"partial uses slots outside 0..{instance.slot_count - 1}")
    if len(set(items.values())) != len(items):
        raise StructuralError(f"partial {items} assigns two talks to one slot")

    model = SearchModel(instance, weights)
    fixed = np.array(sorted(items), dtype=np.intp)
    free = np.array([t for t in range(instance.talk_count) if t not in items], dtype=np.intp)
    slots = np.array([[items[t] for t in fixed]], dtype=np.intp).reshape(1, len(fixed))
    return float(bound_batch(model, fixed, free, slots, exact_welfare=True)[0])


class Incumbent:
    """Best complete schedule so far, shared by all workers"""

    def __init__(self, value: float, prefix: np.ndarray | None):
        self.value = value
        self.prefix = prefix
        self._lock = threading.Lock()

    def offer(self, value: float, prefix: np.ndarray) -> bool:
        with self._lock:
            if value > self.value:
                self.value = value
                self.prefix = np.array(prefix, dtype=np.intp)
                return True
            return False


class Budget:
    """Node and wall-clock limits, charged per evaluated batch"""

    def __init__(self, time_limit: float | None = None, node_limit: int | None = None):
        self.time_limit = time_limit
        self.node_limit = node_limit
        self.started = time.perf_counter()
        self.nodes = 0
        self.exhausted = False
        self._lock = threading.Lock()

    def charge(self, count: int):
        with self._lock:
            self.nodes += count
            if self.node_limit is not None and self.nodes >= self.node_limit:
                self.exhausted = True
            if self.time_limit is not None and time.perf_counter() - self.started >= self.time_limit:
                self.exhausted = True

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.started


@dataclass
class SearchResult:
    prefix: np.ndarray | None
    value: float
    complete: bool
    nodes: int


class BranchAndBound:
    """
    Depth-first branch-and-bound over batches of prefixes.

    Args:
        model: Precomputed arrays for the instance and weights
        incumbent: Starting incumbent (shared between workers)
        budget: Node/time limits (shared between workers)
        tolerance: A node is discarded when its bound <= incumbent + tolerance
        first_hit: Stop as soon as any leaf beats the starting incumbent
    """

    def __init__(
        self,
        model: SearchModel,
        incumbent: Incumbent,
        budget: Budget,
        tolerance: float,
        first_hit: bool = False,
    ):
        self.model = model
        self.incumbent = incumbent
        self.budget = budget
        self.tolerance = tolerance
        self.first_hit = first_hit
        self.stopped = False

    def _chunk_rows(self, depth: int) -> int:
        model = self.model
        free_talks = model.n - depth
        per_child = model.l * (free_talks + model.class_count + 2)
        return max(1, BATCH_ELEMENTS // max(1, per_child * (model.l - depth)))

    def expand(self, prefixes: np.ndarray) -> np.ndarray:
        """All children of a batch, grouped by parent, in candidate-slot order"""
        model = self.model
        N, d = prefixes.shape
        used = np.zeros((N, model.l), dtype=bool)
        used[np.arange(N)[:, None], prefixes] = True
        allowed = ~used
        if model.has_twins:
            # only the lowest-indexed free slot of a group of identical columns is tried
            blocked = (allowed.astype(np.int32) @ model.earlier_twin.T.astype(np.int32)) > 0
            allowed &= ~blocked
        parent, position = np.nonzero(allowed[:, model.slot_order])
        children = np.empty((len(parent), d + 1), dtype=np.intp)
        children[:, :d] = prefixes[parent]
        children[:, d] = model.slot_order[position]
        return children

    def bound(self, children: np.ndarray, exact_welfare: bool = False) -> np.ndarray:
        model = self.model
        depth = children.shape[1]
        return bound_batch(
            model,
            model.talk_order[:depth],
            model.talk_order[depth:],
            children,
            exact_welfare=exact_welfare,
            depth=depth,
        )

    def _cutoff(self) -> float:
        return self.incumbent.value + self.tolerance

    def _step(self, prefixes: np.ndarray) -> tuple[np.ndarray, np.ndarray] | None:
        """Expand and bound one batch; returns surviving interior children, or None at the leaves"""
        model = self.model
        children = self.expand(prefixes)
        if len(children) == 0:
            return None
        bounds = self.bound(children)
        self.budget.charge(len(children))
        keep = bounds > self._cutoff()
        depth = children.shape[1]

        if depth == model.n:
            kept = np.flatnonzero(keep)
            if len(kept):
                best = kept[0] if self.first_hit else kept[np.argmax(bounds[kept])]
                if self.incumbent.offer(float(bounds[best]), children[best]) and self.first_hit:
                    self.stopped = True
            return None

        children, bounds = children[keep], bounds[keep]
        if (
            len(children)
            and model.weights.welfare_weight
            and model.n - depth >= EXACT_WELFARE_MIN_FREE
        ):
            bounds = np.minimum(bounds, self.bound(children, exact_welfare=True))
            keep = bounds > self._cutoff()
            children, bounds = children[keep], bounds[keep]
        return children, bounds

    def run(self, roots: np.ndarray, root_bounds: np.ndarray | None = None):
        """Search every subtree below a batch of prefixes of one common depth"""
        if root_bounds is None:
            root_bounds = np.full(len(roots), np.inf)
        stack = [(roots, root_bounds)]
        while stack and not self.stopped and not self.budget.exhausted:
            prefixes, bounds = stack.pop()
            alive = bounds > self._cutoff()
            prefixes = prefixes[alive]
            if len(prefixes) == 0:
                continue
            chunk = self._chunk_rows(prefixes.shape[1])
            if len(prefixes) > chunk:
                rest = prefixes[chunk:], bounds[alive][chunk:]
                stack.append(rest)
                prefixes = prefixes[:chunk]
            survivors = self._step(prefixes)
            if survivors is not None and len(survivors[0]):
                stack.append(survivors)

    def frontier(self, min_width: int) -> tuple[np.ndarray, np.ndarray]:
        """Breadth-first expansion until at least min_width interior nodes exist (for workers)"""
        prefixes = np.empty((1, 0), dtype=np.intp)
        bounds = np.full(1, np.inf)
        while len(prefixes) < min_width and prefixes.shape[1] < self.model.n - 1:
            step = self._step(prefixes)
            if step is None:
                break
            prefixes, bounds = step
        return prefixes, bounds


def search(
    model: SearchModel,
    incumbent: Incumbent,
    budget: Budget,
    tolerance: float,
    workers: int = 1,
    first_hit: bool = False,
) -> SearchResult:
    """
    Run branch-and-bound to completion or until the budget runs out.

    Returns:
        SearchResult; complete is True when the whole tree was pruned or explored
    """
    engine = BranchAndBound(model, incumbent, budget, tolerance, first_hit=first_hit)
    root = np.empty((1, 0), dtype=np.intp)

    if workers <= 1 or model.n <= 1:
        engine.run(root)
    else:
        prefixes, bounds = engine.frontier(min_width=workers * 4)
        tasks = [
            (part, part_bounds)
            for part, part_bounds in zip(
                np.array_split(prefixes, workers * 4), np.array_split(bounds, workers * 4)
            )
            if len(part)
        ]
        logger.info(f"🔎 Splitting {len(prefixes)} subtrees across {workers} workers")
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(lambda task: engine.run(*task), tasks))

    complete = not budget.exhausted or engine.stopped
    return SearchResult(
        prefix=incumbent.prefix,
        value=incumbent.value,
        complete=complete,
        nodes=budget.nodes,
    )
