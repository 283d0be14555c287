"""Shared fixtures and instance-building helpers for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from wardroster.calendar import CycleCalendar, build_calendar
from wardroster.domain import Nurse, PoolInstance, Schedule


def make_instance(
    n: int = 2,
    days: int = 2,
    shifts_per_day: int = 2,
    blocks: int = 1,
    first_weekday: str = "monday",
    demand=None,
    y=None,
    score=None,
    g=None,
    carry_over=None,
    g_max: int = 10,
    weekend_cap: int = 10,
) -> PoolInstance:
    """Small fully-available instance with overridable grids."""
    cal = CycleCalendar(blocks, days, shifts_per_day, first_weekday)
    q, r = cal.shifts_per_block, cal.blocks_per_cycle
    if y is None:
        y = np.ones((n, q, r), dtype=np.int8)
    else:
        y = np.asarray(y, dtype=np.int8)
    if score is None:
        score = y * 3
    if demand is None:
        demand = np.ones((q, r), dtype=np.int64)
    if g is None:
        g = np.zeros((n, r), dtype=np.int64)
    return PoolInstance(
        calendar=cal,
        nurses=tuple(Nurse(id=f"n{i + 1}", seniority_rank=i + 1) for i in range(n)),
        demand=np.asarray(demand, dtype=np.int64),
        y=y,
        score=np.asarray(score, dtype=np.int8),
        g=np.asarray(g, dtype=np.int64),
        carry_over=None if carry_over is None else np.asarray(carry_over, dtype=np.int8),
        g_max=g_max,
        weekend_cap=weekend_cap,
    )


def schedule_from(instance: PoolInstance, assignments) -> Schedule:
    """Schedule from a list of (nurse, shift, block) assignments."""
    X = np.zeros((instance.n, instance.q, instance.r), dtype=np.int8)
    for i, j, k in assignments:
        X[i, j, k] = 1
    return Schedule.from_assignments(X, instance.demand)


@pytest.fixture
def default_calendar() -> CycleCalendar:
    return build_calendar()
