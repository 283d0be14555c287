"""Exhaustive reference solver for tiny pools.

Enumerates every per-nurse shift selection that survives the general
rules, crosses them without overbooking, and keeps the best candidate
under the lexicographic objective (filled demand first, preference
score second) whose seniority-rule breaches are all justified.  Shares
the rule predicates with the production checker so the two can only
disagree through the optimization layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .domain import PoolInstance, Schedule
from .rules import check_armstrong, unjustified


@dataclass(frozen=True)
class OracleResult:
    demand_filled: int
    preference_score: int
    schedule: Schedule
    candidates_checked: int


def _feasible_selections(instance: PoolInstance, i: int) -> list[np.ndarray]:
    """All (q, r) 0/1 grids nurse ``i`` could work under the general rules."""
    q, r = instance.q, instance.r
    cells = [(j, k) for k in range(r) for j in range(q) if instance.y[i, j, k]]
    carry = instance.carry_over[i]
    weekend = instance.calendar.weekend_shifts
    out: list[np.ndarray] = []
    for size in range(len(cells) + 1):
        for chosen in combinations(cells, size):
            positions = sorted(k * q + j for j, k in chosen)
            if carry[1] and positions and positions[0] <= 1:
                continue
            if carry[0] and positions and positions[0] == 0:
                continue
            if any(b - a <= 2 for a, b in zip(positions, positions[1:])):
                continue
            per_block = [sum(1 for j, k in chosen if k == kk) for kk in range(r)]
            if any(c > instance.g_max for c in per_block):
                continue
            if sum(1 for j, k in chosen if j in weekend) > instance.weekend_cap:
                continue
            grid = np.zeros((q, r), dtype=np.int8)
            for j, k in chosen:
                grid[j, k] = 1
            out.append(grid)
    return out


def brute_force_solve(instance: PoolInstance, max_candidates: int = 2_000_000) -> OracleResult:
    """Lexicographic optimum over the full feasible region.

    Intended for pools small enough to enumerate; raises if the naive
    cross product exceeds ``max_candidates``.
    """
    per_nurse = [_feasible_selections(instance, i) for i in range(instance.n)]
    total = 1
    for sel in per_nurse:
        total *= len(sel)
    if total > max_candidates:
        raise ValueError(f"instance too large for exhaustive search ({total} candidates)")

    d = instance.demand
    candidates: list[tuple[int, int, tuple[int, ...]]] = []

    def recurse(i: int, load: np.ndarray, picked: tuple[int, ...]) -> None:
        if i == instance.n:
            X = np.stack([per_nurse[ii][s] for ii, s in enumerate(picked)])
            assigned = int(X.sum())
            score = int((X * instance.score).sum())
            candidates.append((assigned, score, picked))
            return
        for s, grid in enumerate(per_nurse[i]):
            new_load = load + grid
            if (new_load <= d).all():
                recurse(i + 1, new_load, picked + (s,))

    recurse(0, np.zeros((instance.q, instance.r), dtype=np.int64), ())
    candidates.sort(key=lambda c: (c[0], c[1]), reverse=True)

    checked = 0
    for assigned, score, picked in candidates:
        X = np.stack([per_nurse[i][s] for i, s in enumerate(picked)])
        schedule = Schedule(X=X, S=(d - X.sum(axis=0)).astype(np.int64))
        checked += 1
        if not unjustified(check_armstrong(schedule, instance)):
            return OracleResult(assigned, score, schedule, checked)
    raise RuntimeError("no feasible candidate; the empty schedule should always qualify")
