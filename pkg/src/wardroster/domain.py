"""Shared data model: nurses, demand, availability, schedules, pool instances."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .calendar import CycleCalendar

DESIGNATIONS = ("RN", "RPN", "PSW")

MOST_PREFERRED = 3  # canonical direction: 3 = most preferred, 0 = unavailable


class DomainError(ValueError):
    """Invalid domain data (dimension mismatch, bad scores, rank gaps...)."""


@dataclass(frozen=True)
class Nurse:
    id: str
    seniority_rank: int  # 1 = most senior
    designation: str = "RN"

    def __post_init__(self):
        if self.seniority_rank < 1:
            raise DomainError(f"seniority rank must be >= 1, got {self.seniority_rank}")
        if self.designation not in DESIGNATIONS:
            raise DomainError(f"unknown designation {self.designation!r}")


def normalize_preferences(raw_scores: np.ndarray, direction: str = "ascending") -> np.ndarray:
    """Map raw preference scores to the canonical direction (3 = most preferred).

    ``ascending`` input already uses 3 = most preferred.  ``descending``
    input uses 1 = most preferred (the convention on printed
    availability forms); nonzero scores are mapped s -> 4 - s.  Zero
    always means unavailable.
    """
    raw = np.asarray(raw_scores, dtype=np.int64)
    if raw.min(initial=0) < 0 or raw.max(initial=0) > 3:
        raise DomainError("preference scores must lie in {0, 1, 2, 3}")
    if direction == "ascending":
        return raw.copy()
    if direction == "descending":
        out = raw.copy()
        nz = out > 0
        out[nz] = 4 - out[nz]
        return out
    raise DomainError(f"unknown preference direction {direction!r}")


def derive_part_time_demand(
    total_demand: np.ndarray,
    ft_assignments: np.ndarray,
    ft_leaves: np.ndarray | None = None,
) -> np.ndarray:
    """Part-time demand left after full-time coverage, net of full-time leaves."""
    total = np.asarray(total_demand, dtype=np.int64)
    ft = np.asarray(ft_assignments, dtype=np.int64)
    leaves = np.zeros_like(total) if ft_leaves is None else np.asarray(ft_leaves, dtype=np.int64)
    if total.shape != ft.shape or total.shape != leaves.shape:
        raise DomainError("demand grids must share one shape")
    if np.any(leaves > ft):
        raise DomainError("full-time leaves exceed full-time assignments")
    d = total - (ft - leaves)
    if np.any(d < 0):
        bad = np.argwhere(d < 0)[0]
        raise DomainError(
            f"full-time coverage exceeds total demand at shift {bad[0]}, block {bad[1]}"
        )
    return d


@dataclass(frozen=True)
class PoolInstance:
    """One scheduling pool's complete problem input.

    Grids are zero-based numpy arrays: availability ``y`` and preference
    ``score`` are (n, q, r); ``demand`` is (q, r); ``g`` (minimum shift
    requirement) is (n, r); ``carry_over`` is (n, 2) flagging whether
    each nurse worked the (second-to-last, last) shift of the previous
    horizon.
    """

    calendar: CycleCalendar
    nurses: tuple[Nurse, ...]
    demand: np.ndarray
    y: np.ndarray
    score: np.ndarray
    g: np.ndarray
    carry_over: np.ndarray = None  # type: ignore[assignment]
    g_max: int = 10
    weekend_cap: int = 10

    def __post_init__(self):
        n, q, r = self.n, self.calendar.shifts_per_block, self.calendar.blocks_per_cycle
        ranks = sorted(nu.seniority_rank for nu in self.nurses)
        if ranks != list(range(1, n + 1)):
            raise DomainError(f"seniority ranks must be 1..{n} without gaps, got {ranks}")
        if list(nu.seniority_rank for nu in self.nurses) != list(range(1, n + 1)):
            raise DomainError("nurses must be listed in seniority order")
        if self.carry_over is None:
            object.__setattr__(self, "carry_over", np.zeros((n, 2), dtype=np.int8))
        for name, arr, shape in (
            ("demand", self.demand, (q, r)),
            ("y", self.y, (n, q, r)),
            ("score", self.score, (n, q, r)),
            ("g", self.g, (n, r)),
            ("carry_over", self.carry_over, (n, 2)),
        ):
            if np.asarray(arr).shape != shape:
                raise DomainError(f"{name} has shape {np.asarray(arr).shape}, expected {shape}")
        if np.any(self.demand < 0):
            raise DomainError("demand must be non-negative")
        if np.any((self.score > 0) != (self.y > 0)):
            raise DomainError("score must be positive exactly where availability is 1")
        if np.any(self.score < 0) or np.any(self.score > 3):
            raise DomainError("scores must lie in {0, 1, 2, 3}")
        if np.any(self.g < 0) or np.any(self.g > self.g_max):
            raise DomainError("minimum shift requirements must lie in [0, g_max]")
        if np.any(np.diff(self.g, axis=0) > 0):
            raise DomainError("minimum shift requirements must be non-increasing in rank")

    @property
    def n(self) -> int:
        return len(self.nurses)

    @property
    def q(self) -> int:
        return self.calendar.shifts_per_block

    @property
    def r(self) -> int:
        return self.calendar.blocks_per_cycle

    @property
    def total_demand(self) -> int:
        return int(self.demand.sum())


@dataclass(frozen=True)
class Schedule:
    """Binary assignment X (n, q, r) plus unfilled-demand counts S (q, r)."""

    X: np.ndarray
    S: np.ndarray

    @staticmethod
    def from_assignments(X: np.ndarray, demand: np.ndarray) -> "Schedule":
        X = np.asarray(X, dtype=np.int8)
        S = np.asarray(demand, dtype=np.int64) - X.sum(axis=0)
        if np.any(S < 0):
            raise DomainError("assignments exceed demand (overbooking)")
        return Schedule(X=X, S=S)

    def validate_supply(self, demand: np.ndarray) -> None:
        if not np.array_equal(self.X.sum(axis=0) + self.S, demand):
            raise DomainError("supply identity violated: assigned + unfilled != demand")

    def assigned_per_block(self) -> np.ndarray:
        """Total shifts assigned per nurse per block, shape (n, r)."""
        return self.X.sum(axis=1)

    def copy(self) -> "Schedule":
        return Schedule(X=self.X.copy(), S=self.S.copy())


def empty_schedule(instance: PoolInstance) -> Schedule:
    X = np.zeros((instance.n, instance.q, instance.r), dtype=np.int8)
    return Schedule(X=X, S=instance.demand.astype(np.int64).copy())
