import pytest
from hypothesis import given
from hypothesis import strategies as st

from wardroster.calendar import WEEKDAYS, CycleCalendar, build_calendar


class TestDefaultCycle:
    def test_shape(self):
        cal = build_calendar()
        assert cal.blocks_per_cycle == 3
        assert cal.days_per_block == 14
        assert cal.shifts_per_day == 3
        assert cal.shifts_per_block == 42

    def test_wednesday_start_weekend_days(self):
        # A 14-day block starting Wednesday contains two weekends:
        # days 4-5 and 11-12 one-based, i.e. 3-4 and 10-11 zero-based.
        cal = build_calendar()
        assert cal.weekend_days == (3, 4, 10, 11)
        assert cal.weekend_days_per_block == 4

    def test_weekend_shift_sets(self):
        cal = build_calendar()
        assert len(cal.weekend_shift_sets) == 4
        assert cal.weekend_shift_sets[0] == frozenset({9, 10, 11})
        assert len(cal.weekend_shifts) == 12

    def test_monday_start_weekend_days(self):
        cal = build_calendar(first_weekday="monday")
        # One-based days 6, 7, 13, 14.
        assert cal.weekend_days == (5, 6, 12, 13)


class TestSmallCycles:
    def test_all_weekend(self):
        cal = build_calendar(blocks=1, days_per_block=2, shifts_per_day=3, first_weekday="saturday")
        assert cal.weekend_days == (0, 1)
        assert cal.weekend_shifts == frozenset(range(6))

    def test_no_weekend(self):
        cal = build_calendar(blocks=1, days_per_block=4, shifts_per_day=2, first_weekday="monday")
        assert cal.weekend_days == ()
        assert cal.weekend_shifts == frozenset()


class TestIndexing:
    def test_day_slot_examples(self):
        cal = build_calendar()
        assert cal.day_slot(0) == (0, 0)
        assert cal.day_slot(11) == (3, 2)
        assert cal.shift_index(3, 2) == 11

    def test_is_weekend_shift(self):
        cal = build_calendar()
        assert cal.is_weekend_shift(9)
        assert not cal.is_weekend_shift(8)

    def test_out_of_range(self):
        cal = build_calendar()
        with pytest.raises(ValueError):
            cal.day_slot(42)
        with pytest.raises(ValueError):
            cal.shift_index(14, 0)
        with pytest.raises(ValueError):
            cal.shift_index(0, 3)

    @given(
        days=st.integers(1, 20),
        per_day=st.integers(1, 4),
        shift=st.data(),
    )
    def test_round_trip(self, days, per_day, shift):
        cal = build_calendar(blocks=1, days_per_block=days, shifts_per_day=per_day)
        s = shift.draw(st.integers(0, cal.shifts_per_block - 1))
        day, slot = cal.day_slot(s)
        assert cal.shift_index(day, slot) == s

    @given(start=st.sampled_from(WEEKDAYS), days=st.integers(1, 28))
    def test_weekend_density(self, start, days):
        cal = build_calendar(blocks=1, days_per_block=days, first_weekday=start)
        # Every 7 consecutive days contain exactly 2 weekend days.
        assert len(cal.weekend_days) == sum(
            1
            for d in range(days)
            if WEEKDAYS[(WEEKDAYS.index(start) + d) % 7] in ("saturday", "sunday")
        )


class TestValidation:
    def test_bad_weekday(self):
        with pytest.raises(ValueError):
            CycleCalendar(first_weekday="caturday")

    def test_bad_counts(self):
        with pytest.raises(ValueError):
            CycleCalendar(blocks_per_cycle=0)
        with pytest.raises(ValueError):
            CycleCalendar(shifts_per_day=0)
