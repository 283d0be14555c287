"""Greedy fill plus check-and-reassign repair.

Starting from the approximate stage output, unfilled demand is handed
to the most senior eligible nurse, then a swap routine rebalances each
shift between nurse pairs until a full pass makes no change.  Swaps are
indifferent to preference scores and never move units between shifts.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .domain import PoolInstance, Schedule
from .rules import compute_deltas, compute_eligibility

DEFAULT_ITERATION_LIMIT = 50
MAX_REPAIR_ROUNDS = 25

# Swap branches: which imbalance triggered the reassignment.
SENIOR_SURPLUS_GAP = "senior_surplus_gap"        # senior delta exceeds junior's by 2+
JUNIOR_BELOW_MINIMUM = "junior_below_minimum"    # senior above, junior below minimum
JUNIOR_SURPLUS_GAP = "junior_surplus_gap"        # junior delta exceeds senior's
SENIOR_NOT_AHEAD = "senior_not_ahead"            # junior above while senior at/below

_BRANCHES = (SENIOR_SURPLUS_GAP, JUNIOR_BELOW_MINIMUM, JUNIOR_SURPLUS_GAP, SENIOR_NOT_AHEAD)


@dataclass(frozen=True)
class SwapEvent:
    block: int
    shift: int
    from_nurse: int
    to_nurse: int
    rule_branch: str
    iteration: int

    def __post_init__(self):
        if self.from_nurse == self.to_nurse:
            raise ValueError("swap must move the unit between two nurses")
        if self.rule_branch not in _BRANCHES:
            raise ValueError(f"unknown swap branch {self.rule_branch!r}")


@dataclass
class HeuristicResult:
    """Outcome of one reassignment run, or of a whole repair.

    ``round_starts`` holds the swap_log indices where each fill-then-
    reassign round begins; a plain reassignment run leaves it at [0]
    (or [] when no swap happened).  The no-return guarantee — a unit a
    nurse gave up never comes back to them — holds within each round;
    a filling round in between changes who deserves each unit, so the
    guarantee does not span rounds.
    """

    schedule: Schedule
    swap_log: list[SwapEvent] = field(default_factory=list)
    iterations_used: int = 0
    hit_iteration_limit: bool = False
    round_starts: list[int] = field(default_factory=list)


def swap_log_jsonl(swap_log: list[SwapEvent]) -> str:
    """Ordered audit trail, one JSON object per swap."""
    return "\n".join(json.dumps(asdict(ev), sort_keys=True) for ev in swap_log)


def greedy_fill(start: Schedule, instance: PoolInstance) -> Schedule:
    """Hand each unfilled unit to the most senior currently eligible nurse."""
    schedule = start.copy()
    flags = compute_eligibility(schedule, instance)
    for k in range(instance.r):
        for j in range(instance.q):
            for i in range(instance.n):
                if schedule.S[j, k] > 0 and flags.combined[i, j, k]:
                    schedule.X[i, j, k] = 1
                    schedule.S[j, k] -= 1
                    flags = compute_eligibility(schedule, instance)
    return schedule


def _balance_fill(start: Schedule, instance: PoolInstance) -> Schedule:
    """Hand unfilled units to the furthest-below-minimum eligible nurse.

    Used for capacity freed by reassignments: giving those units to the
    most senior nurse regardless of load would immediately recreate the
    imbalances the swap routine just resolved.  Ties go to seniority.
    """
    schedule = start.copy()
    flags = compute_eligibility(schedule, instance)
    deltas = compute_deltas(schedule, instance.g)
    while True:
        filled = False
        for k in range(instance.r):
            for j in range(instance.q):
                if schedule.S[j, k] <= 0:
                    continue
                eligible = [i for i in range(instance.n) if flags.combined[i, j, k]]
                if not eligible:
                    continue
                i = min(eligible, key=lambda i: (deltas.delta[i, k], i))
                schedule.X[i, j, k] = 1
                schedule.S[j, k] -= 1
                deltas = compute_deltas(schedule, instance.g)
                flags = compute_eligibility(schedule, instance, deltas)
                filled = True
        if not filled:
            return schedule


class _SwapState:
    """One reassignment run's mutable state plus the scanning sweep."""

    def __init__(self, schedule, instance, donated, log):
        self.schedule = schedule
        self.instance = instance
        self.donated = donated
        self.log = log
        self.deltas = compute_deltas(schedule, instance.g)
        self.flags = compute_eligibility(schedule, instance, self.deltas)

    def _pick(self, j: int, k: int, hi: int, lo: int, forced_only: bool):
        """Branch for pair (hi, lo) at one cell, or None.

        ``forced_only`` restricts the scan to moves whose receiver is
        below their minimum; surplus trades wait for the general sweep.
        """
        schedule, delta = self.schedule, self.deltas.delta
        if (
            schedule.X[hi, j, k] == 1
            and self.flags.combined[lo, j, k]
            and (k, j, lo) not in self.donated
        ):
            if delta[hi, k] > 0 and delta[lo, k] < 0:
                return (hi, lo, JUNIOR_BELOW_MINIMUM)
            if (
                not forced_only
                and delta[hi, k] > 0
                and delta[lo, k] >= 0
                and delta[hi, k] - delta[lo, k] > 1
            ):
                return (hi, lo, SENIOR_SURPLUS_GAP)
        if (
            schedule.X[lo, j, k] == 1
            and self.flags.combined[hi, j, k]
            and (k, j, hi) not in self.donated
        ):
            branch = None
            if delta[hi, k] < 0:
                branch = (lo, hi, SENIOR_NOT_AHEAD)
            elif not forced_only and delta[lo, k] > 0:
                if delta[hi, k] > 0 and delta[lo, k] - delta[hi, k] > 0:
                    branch = (lo, hi, JUNIOR_SURPLUS_GAP)
                elif delta[hi, k] == 0:
                    branch = (lo, hi, SENIOR_NOT_AHEAD)
            if branch is not None:
                # Feed the senior from the most junior qualifying
                # holder: a senior may run one ahead of a junior, so
                # draining the junior end never creates a new breach,
                # while draining a mid-rank nurse can.
                for cand in range(self.instance.n - 1, lo, -1):
                    if self.schedule.X[cand, j, k] != 1:
                        continue
                    if delta[hi, k] < 0:
                        return (cand, hi, SENIOR_NOT_AHEAD)
                    if delta[cand, k] > 0 and delta[hi, k] > 0:
                        if delta[cand, k] - delta[hi, k] > 0:
                            return (cand, hi, JUNIOR_SURPLUS_GAP)
                    if delta[cand, k] > 0 and delta[hi, k] == 0:
                        return (cand, hi, SENIOR_NOT_AHEAD)
                return branch
        return None

    def sweep(self, iteration: int, forced_only: bool) -> int:
        inst = self.instance
        swaps = 0
        for k in range(inst.r):
            for j in range(inst.q):
                if inst.demand[j, k] <= 0:
                    continue
                for hi in range(inst.n - 1):
                    for lo in range(hi + 1, inst.n):
                        branch = self._pick(j, k, hi, lo, forced_only)
                        if branch is None:
                            continue
                        src, dst, name = branch
                        self.schedule.X[src, j, k] = 0
                        self.schedule.X[dst, j, k] = 1
                        self.donated.add((k, j, src))
                        swaps += 1
                        self.log.append(
                            SwapEvent(
                                block=k, shift=j, from_nurse=src, to_nurse=dst,
                                rule_branch=name, iteration=iteration,
                            )
                        )
                        self.deltas = compute_deltas(self.schedule, inst.g)
                        self.flags = compute_eligibility(self.schedule, inst, self.deltas)
        return swaps


def check_and_reassign(
    schedule: Schedule,
    instance: PoolInstance,
    iteration_limit: int = DEFAULT_ITERATION_LIMIT,
) -> HeuristicResult:
    """Pairwise single-shift reassignments until a pass has zero swaps.

    ``donated`` records (block, shift, nurse) units a nurse has given
    up during this run; a unit never returns to a nurse who donated it,
    which is what keeps every chain of reassignments finite.
    """
    schedule = schedule.copy()
    log: list[SwapEvent] = []
    donated: set[tuple[int, int, int]] = set()
    iterations = 0
    converged = False
    state = _SwapState(schedule, instance, donated, log)
    while iterations < iteration_limit:
        iterations += 1
        # Feed below-minimum nurses before trading surplus: a surplus
        # donation made while deficits remain can give away the donor's
        # only refuge, stranding them once the forced feeds drain their
        # balance.
        swaps = state.sweep(iterations, forced_only=True)
        swaps += state.sweep(iterations, forced_only=False)
        if swaps == 0:
            converged = True
            break
    return HeuristicResult(
        schedule=schedule,
        swap_log=log,
        iterations_used=iterations,
        hit_iteration_limit=not converged,
        round_starts=[0] if log else [],
    )


def run_repair(
    ip_output: Schedule,
    instance: PoolInstance,
    iteration_limit: int = DEFAULT_ITERATION_LIMIT,
) -> HeuristicResult:
    """Fill, then swap, repeating until a whole round changes nothing.

    A reassignment can relax a general-rule flag elsewhere (the nurse
    who gave the shift up regains slack), so filling and swapping run
    to a joint fixed point.  Each round is a fresh reassignment run:
    relative surpluses shift between rounds, so a unit may move to a
    nurse who gave it up in an earlier round.  MAX_REPAIR_ROUNDS is a
    safety valve, surfaced through hit_iteration_limit.
    """
    schedule = ip_output
    log: list[SwapEvent] = []
    iterations = 0
    hit_limit = False
    round_starts: list[int] = []
    first_round = True
    rounds = 0
    while True:
        rounds += 1
        fill = greedy_fill if first_round else _balance_fill
        first_round = False
        filled = fill(schedule, instance)
        fills_made = not np.array_equal(filled.X, schedule.X)
        res = check_and_reassign(filled, instance, iteration_limit)
        if res.swap_log:
            round_starts.append(len(log))
        log.extend(res.swap_log)
        iterations += res.iterations_used
        hit_limit = hit_limit or res.hit_iteration_limit
        schedule = res.schedule
        if hit_limit or (not fills_made and not res.swap_log):
            break
        if rounds >= MAX_REPAIR_ROUNDS:
            hit_limit = True
            break
    return HeuristicResult(
        schedule=schedule,
        swap_log=log,
        iterations_used=iterations,
        hit_iteration_limit=hit_limit,
        round_starts=round_starts,
    )
