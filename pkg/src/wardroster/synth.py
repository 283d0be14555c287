"""Seeded random pool generation for tests and experiments.

Three sizes: tiny pools small enough for the exhaustive reference
solver, mid-size pools on the default cycle for heuristic runs, and
small pools on a shortened cycle where the exact model stays cheap.
"""

from __future__ import annotations

import numpy as np

from .calendar import WEEKDAYS, CycleCalendar, build_calendar
from .domain import Nurse, PoolInstance

_TINY_SHAPES = [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (4, 2), (2, 1), (6, 1), (8, 1)]
_MINIMUM_LADDER = (8, 6, 4, 3)


def _nurses(n: int) -> tuple[Nurse, ...]:
    return tuple(Nurse(id=f"N{i + 1:02d}", seniority_rank=i + 1, designation="RN") for i in range(n))


def _availability(rng: np.random.Generator, n: int, q: int, r: int, density: float):
    y = (rng.random((n, q, r)) < density).astype(np.int8)
    score = np.where(y == 1, rng.integers(1, 4, size=(n, q, r)), 0).astype(np.int8)
    return y, score


def tiny_instance(seed: int) -> PoolInstance:
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 3))
    days, per_day = _TINY_SHAPES[rng.integers(len(_TINY_SHAPES))]
    cal = CycleCalendar(
        blocks_per_cycle=1,
        days_per_block=days,
        shifts_per_day=per_day,
        first_weekday=WEEKDAYS[rng.integers(7)],
    )
    q = cal.shifts_per_block
    g_max = int(rng.integers(1, 5))
    y, score = _availability(rng, n, q, 1, density=0.75)
    demand = rng.integers(0, n + 1, size=(q, 1)).astype(np.int64)
    g = np.sort(rng.integers(0, g_max + 1, size=(n, 1)), axis=0)[::-1].astype(np.int64)
    carry = (rng.random((n, 2)) < 0.2).astype(np.int8)
    weekend_cap = int(rng.integers(0, 4)) if cal.weekend_shifts else 10
    return PoolInstance(
        calendar=cal,
        nurses=_nurses(n),
        demand=demand,
        y=y,
        score=score,
        g=g,
        carry_over=carry,
        g_max=g_max,
        weekend_cap=weekend_cap,
    )


def midsize_instance(seed: int) -> PoolInstance:
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 13))
    cal = build_calendar()
    q, r = cal.shifts_per_block, cal.blocks_per_cycle
    y, score = _availability(rng, n, q, r, density=0.55)
    demand = rng.integers(0, 4, size=(q, r)).astype(np.int64)
    ladder = np.sort(rng.choice(_MINIMUM_LADDER, size=n))[::-1]
    g = np.tile(ladder[:, None], (1, r)).astype(np.int64)
    carry = (rng.random((n, 2)) < 0.15).astype(np.int8)
    return PoolInstance(
        calendar=cal,
        nurses=_nurses(n),
        demand=demand,
        y=y,
        score=score,
        g=g,
        carry_over=carry,
    )


def capped_demand_instance(seed: int) -> PoolInstance:
    """Small pool whose per-block demand fits under the minimum totals.

    With demand at or below Σ_i g[i][k] for every block, the capped
    model loses nothing; these pools exercise that regime directly.
    Availability is drawn dense so most seeds also need no seniority
    exceptions.
    """
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 5))
    cal = CycleCalendar(
        blocks_per_cycle=int(rng.integers(1, 3)),
        days_per_block=7,
        shifts_per_day=2,
        first_weekday="wednesday",
    )
    q, r = cal.shifts_per_block, cal.blocks_per_cycle
    y, score = _availability(rng, n, q, r, density=0.9)
    g_max = int(rng.integers(4, 7))
    g = np.sort(
        rng.integers(1, min(4, g_max) + 1, size=(n, r)), axis=0
    )[::-1].astype(np.int64)
    demand = rng.integers(0, 2, size=(q, r)).astype(np.int64)
    for k in range(r):
        cap = int(g[:, k].sum())
        while int(demand[:, k].sum()) > cap:
            hot = np.flatnonzero(demand[:, k] > 0)
            demand[hot[rng.integers(len(hot))], k] -= 1
    return PoolInstance(
        calendar=cal,
        nurses=_nurses(n),
        demand=demand,
        y=y,
        score=score,
        g=g,
        g_max=g_max,
        weekend_cap=int(rng.integers(2, 4)),
    )


def small_exact_instance(seed: int) -> PoolInstance:
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 5))
    cal = CycleCalendar(
        blocks_per_cycle=int(rng.integers(1, 3)),
        days_per_block=7,
        shifts_per_day=2,
        first_weekday="wednesday",
    )
    q, r = cal.shifts_per_block, cal.blocks_per_cycle
    y, score = _availability(rng, n, q, r, density=0.65)
    demand = rng.integers(0, 3, size=(q, r)).astype(np.int64)
    g_max = int(rng.integers(3, 6))
    g = np.sort(
        rng.integers(1, min(5, g_max + 1), size=(n, r)), axis=0
    )[::-1].astype(np.int64)
    carry = (rng.random((n, 2)) < 0.15).astype(np.int8)
    return PoolInstance(
        calendar=cal,
        nurses=_nurses(n),
        demand=demand,
        y=y,
        score=score,
        g=g,
        carry_over=carry,
        g_max=g_max,
        weekend_cap=int(rng.integers(1, 4)),
    )
