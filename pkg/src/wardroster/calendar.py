"""Cycle calendar: block/day/shift indexing and weekend shift sets."""

from __future__ import annotations

from dataclasses import dataclass, field

WEEKDAYS = (
    "monday",
    "tuesday",
    "wednesday",
    "thursday",
    "friday",
    "saturday",
    "sunday",
)


@dataclass(frozen=True)
class CycleCalendar:
    """Indexing of blocks, days, and shifts for one scheduling horizon.

    Shifts within a block are numbered 0..q-1 (internal zero-based),
    with shift ``shifts_per_day * day + slot`` for zero-based day and
    slot.  Weekend shift sets are per block: one set of shift indices
    for each weekend day in the block layout.
    """

    blocks_per_cycle: int = 3
    days_per_block: int = 14
    shifts_per_day: int = 3
    first_weekday: str = "wednesday"
    weekend_days: tuple[int, ...] = field(init=False)
    weekend_shift_sets: tuple[frozenset[int], ...] = field(init=False)

    def __post_init__(self):
        if self.blocks_per_cycle < 1 or self.days_per_block < 1 or self.shifts_per_day < 1:
            raise ValueError("calendar counts must be >= 1")
        if self.first_weekday not in WEEKDAYS:
            raise ValueError(f"unknown weekday: {self.first_weekday!r}")
        start = WEEKDAYS.index(self.first_weekday)
        days = tuple(
            d for d in range(self.days_per_block)
            if WEEKDAYS[(start + d) % 7] in ("saturday", "sunday")
        )
        sets = tuple(
            frozenset(
                self.shifts_per_day * d + t for t in range(self.shifts_per_day)
            )
            for d in days
        )
        object.__setattr__(self, "weekend_days", days)
        object.__setattr__(self, "weekend_shift_sets", sets)

    @property
    def shifts_per_block(self) -> int:
        return self.days_per_block * self.shifts_per_day

    @property
    def weekend_days_per_block(self) -> int:
        return len(self.weekend_days)

    @property
    def weekend_shifts(self) -> frozenset[int]:
        """All weekend shift indices within one block."""
        out: set[int] = set()
        for s in self.weekend_shift_sets:
            out |= s
        return frozenset(out)

    def day_slot(self, shift: int) -> tuple[int, int]:
        """Decode a block-local shift index to (day, slot), zero-based."""
        if not 0 <= shift < self.shifts_per_block:
            raise ValueError(f"shift index {shift} out of range")
        return divmod(shift, self.shifts_per_day)

    def shift_index(self, day: int, slot: int) -> int:
        if not 0 <= day < self.days_per_block:
            raise ValueError(f"day {day} out of range")
        if not 0 <= slot < self.shifts_per_day:
            raise ValueError(f"slot {slot} out of range")
        return self.shifts_per_day * day + slot

    def is_weekend_shift(self, shift: int) -> bool:
        day, _ = self.day_slot(shift)
        return day in self.weekend_days


def build_calendar(
    blocks: int = 3,
    days_per_block: int = 14,
    shifts_per_day: int = 3,
    first_weekday: str = "wednesday",
) -> CycleCalendar:
    return CycleCalendar(blocks, days_per_block, shifts_per_day, first_weekday)
