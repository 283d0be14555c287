import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from conftest import make_instance, schedule_from
from wardroster.domain import (
    DomainError,
    Nurse,
    Schedule,
    derive_part_time_demand,
    empty_schedule,
    normalize_preferences,
)

scores = hnp.arrays(np.int64, (4, 3), elements=st.integers(0, 3))


class TestNormalizePreferences:
    def test_descending_maps_one_to_three(self):
        raw = np.array([[1, 2, 3, 0]])
        out = normalize_preferences(raw, "descending")
        assert out.tolist() == [[3, 2, 1, 0]]

    def test_ascending_identity(self):
        raw = np.array([[0, 1, 2, 3]])
        assert normalize_preferences(raw, "ascending").tolist() == raw.tolist()

    def test_rejects_out_of_range(self):
        with pytest.raises(DomainError):
            normalize_preferences(np.array([4]))
        with pytest.raises(DomainError):
            normalize_preferences(np.array([-1]))
        with pytest.raises(DomainError):
            normalize_preferences(np.array([1]), "sideways")

    @given(raw=scores)
    def test_descending_is_an_involution(self, raw):
        once = normalize_preferences(raw, "descending")
        twice = normalize_preferences(once, "descending")
        assert np.array_equal(twice, raw)

    @given(raw=scores)
    def test_zero_preserved(self, raw):
        out = normalize_preferences(raw, "descending")
        assert np.array_equal(out == 0, raw == 0)


class TestDerivePartTimeDemand:
    def test_basic(self):
        d = derive_part_time_demand(np.array([[5]]), np.array([[3]]), np.array([[1]]))
        assert d.tolist() == [[3]]

    def test_exact_coverage(self):
        d = derive_part_time_demand(np.array([[2]]), np.array([[2]]))
        assert d.tolist() == [[0]]

    def test_over_coverage_rejected(self):
        with pytest.raises(DomainError):
            derive_part_time_demand(np.array([[1]]), np.array([[2]]))

    def test_leaves_exceeding_assignments_rejected(self):
        with pytest.raises(DomainError):
            derive_part_time_demand(np.array([[5]]), np.array([[1]]), np.array([[2]]))

    def test_shape_mismatch(self):
        with pytest.raises(DomainError):
            derive_part_time_demand(np.zeros((2, 1)), np.zeros((1, 2)))


class TestNurse:
    def test_rank_must_be_positive(self):
        with pytest.raises(DomainError):
            Nurse(id="x", seniority_rank=0)

    def test_designation(self):
        with pytest.raises(DomainError):
            Nurse(id="x", seniority_rank=1, designation="MD")


class TestPoolInstance:
    def test_defaults_carry_over(self):
        inst = make_instance()
        assert inst.carry_over.shape == (2, 2)
        assert inst.carry_over.sum() == 0

    def test_properties(self):
        inst = make_instance(n=3, days=2, shifts_per_day=2, blocks=2)
        assert (inst.n, inst.q, inst.r) == (3, 4, 2)
        assert inst.total_demand == int(inst.demand.sum())

    def test_rank_gaps_rejected(self):
        inst = make_instance()
        with pytest.raises(DomainError):
            make_instance().__class__(
                calendar=inst.calendar,
                nurses=(Nurse("a", 1), Nurse("b", 3)),
                demand=inst.demand,
                y=inst.y,
                score=inst.score,
                g=inst.g,
            )

    def test_score_availability_consistency(self):
        inst = make_instance()
        bad_score = inst.score.copy()
        bad_score[0, 0, 0] = 0  # available but no score
        with pytest.raises(DomainError):
            make_instance(score=bad_score)

    def test_negative_demand_rejected(self):
        with pytest.raises(DomainError):
            make_instance(demand=-np.ones((4, 1)))

    def test_minimums_must_be_non_increasing(self):
        with pytest.raises(DomainError):
            make_instance(g=[[1], [2]])

    def test_minimums_capped_by_g_max(self):
        with pytest.raises(DomainError):
            make_instance(g=[[5], [5]], g_max=4)

    def test_dimension_mismatch(self):
        with pytest.raises(DomainError):
            make_instance(demand=np.ones((3, 1)))


class TestSchedule:
    def test_from_assignments_computes_unfilled(self):
        inst = make_instance(demand=np.full((4, 1), 2))
        sched = schedule_from(inst, [(0, 0, 0), (1, 0, 0), (0, 3, 0)])
        assert sched.S[0, 0] == 0
        assert sched.S[3, 0] == 1
        sched.validate_supply(inst.demand)

    def test_overbooking_rejected(self):
        inst = make_instance(demand=np.zeros((4, 1)))
        with pytest.raises(DomainError):
            schedule_from(inst, [(0, 0, 0)])

    def test_validate_supply_detects_drift(self):
        inst = make_instance()
        sched = empty_schedule(inst)
        with pytest.raises(DomainError):
            sched.validate_supply(inst.demand + 1)

    def test_empty_schedule(self):
        inst = make_instance(demand=np.full((4, 1), 2))
        sched = empty_schedule(inst)
        assert sched.X.sum() == 0
        assert np.array_equal(sched.S, inst.demand)

    @given(
        X=hnp.arrays(np.int8, (2, 4, 1), elements=st.integers(0, 1)),
        extra=hnp.arrays(np.int64, (4, 1), elements=st.integers(0, 2)),
    )
    def test_supply_identity_holds_by_construction(self, X, extra):
        demand = X.sum(axis=0) + extra
        sched = Schedule.from_assignments(X, demand)
        sched.validate_supply(demand)
        assert np.array_equal(sched.assigned_per_block(), X.sum(axis=1))
