import numpy as np
import pytest

from conftest import make_instance
from wardroster.milp import OPTIMAL, TIMED_OUT
from wardroster.oracle import brute_force_solve
from wardroster.rules import check_armstrong, check_general_rules, unjustified
from wardroster.stages import (
    APPROXIMATE,
    EXACT,
    build_stage1,
    build_stage2,
    solve_two_stage,
)
from wardroster.synth import small_exact_instance, tiny_instance


def square_instance():
    """Four shifts, one unit each; rest rules allow at most three fills.

    Minimums of two per nurse keep the capped model from parking at
    zero assignments, so both modes reach the same demand optimum.
    """
    return make_instance(
        n=2, days=2, shifts_per_day=2, demand=np.full((4, 1), 1), g=[[2], [2]]
    )


class TestStage1:
    @pytest.mark.parametrize("mode", [APPROXIMATE, EXACT])
    def test_known_demand_optimum(self, mode):
        out1, out2 = solve_two_stage(square_instance(), mode=mode)
        assert out1.status == OPTIMAL
        assert out1.objective_value == 3  # filled demand
        assert out1.schedule.S.sum() == 1

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            build_stage1(square_instance(), "heuristic")

    def test_stage2_requires_consistent_target(self):
        with pytest.raises(ValueError):
            build_stage2(square_instance(), demand_star=99, mode=EXACT)


class TestStage2:
    def test_preference_maximized_at_fixed_demand(self):
        inst = square_instance()
        out1, out2 = solve_two_stage(inst, mode=EXACT)
        assert out2 is not None and out2.status == OPTIMAL
        # Three fills at top preference score 3 each.
        assert out2.objective_value == 9
        assert out2.schedule.S.sum() == 1

    def test_stage2_respects_stage1_demand(self):
        inst = square_instance()
        _, out2 = solve_two_stage(inst, mode=APPROXIMATE)
        assert int(out2.schedule.X.sum()) == 3

    def test_preference_steering(self):
        # Adjacent one-unit shifts, only one can be worked: the higher
        # scoring shift wins stage 2.
        score = np.zeros((1, 4, 1), dtype=np.int8)
        score[0, 0, 0] = 1
        score[0, 1, 0] = 3
        y = (score > 0).astype(np.int8)
        inst = make_instance(
            n=1, days=2, shifts_per_day=2, demand=[[1], [1], [0], [0]], y=y, score=score
        )
        out1, out2 = solve_two_stage(inst, mode=EXACT)
        assert out1.objective_value == 1
        assert out2.schedule.X[0, 1, 0] == 1
        assert out2.schedule.X[0, 0, 0] == 0

    def test_seniority_blocks_greedy_preference(self):
        # The junior scores higher on the only unit, but taking it would
        # put them a full shift ahead of an unblocked senior.
        score = np.zeros((2, 4, 1), dtype=np.int8)
        score[0, 0, 0] = 1
        score[1, 0, 0] = 3
        y = (score > 0).astype(np.int8)
        inst = make_instance(
            n=2, days=2, shifts_per_day=2, demand=[[1], [0], [0], [0]], y=y, score=score
        )
        _, out2 = solve_two_stage(inst, mode=EXACT)
        assert out2.schedule.X[0, 0, 0] == 1
        assert out2.schedule.X[1, 0, 0] == 0


class TestTimeLimit:
    @pytest.mark.parametrize("mode", [APPROXIMATE, EXACT])
    def test_zero_limit_returns_no_schedule(self, mode):
        out1, out2 = solve_two_stage(square_instance(), mode=mode, time_limit_per_stage=0)
        assert out1.status == TIMED_OUT
        assert out1.schedule is None
        assert out2 is None


class TestExactMode:
    def test_matches_oracle_on_sample_seeds(self):
        for seed in range(12):
            inst = tiny_instance(seed)
            out1, out2 = solve_two_stage(inst, mode=EXACT)
            ref = brute_force_solve(inst)
            assert out1.objective_value == ref.demand_filled, f"seed {seed}"
            assert out2.objective_value == ref.preference_score, f"seed {seed}"

    def test_output_is_rule_clean(self):
        for seed in range(4):
            inst = small_exact_instance(seed)
            _, out2 = solve_two_stage(inst, mode=EXACT)
            sched = out2.schedule
            assert check_general_rules(sched, inst) == []
            assert unjustified(check_armstrong(sched, inst)) == []


class TestApproximateMode:
    def test_caps_each_nurse_at_minimum(self):
        inst = make_instance(
            n=1, days=6, shifts_per_day=3, demand=np.full((18, 1), 1), g=[[2]]
        )
        out1, _ = solve_two_stage(inst, mode=APPROXIMATE)
        assert out1.schedule.assigned_per_block()[0, 0] <= 2

    def test_exactness_when_demand_within_minimums(self):
        # Demand no larger than the sum of minimums and no exceptions:
        # the capped model reaches the same stage-1 value as the full one.
        inst = make_instance(
            n=2, days=3, shifts_per_day=2, demand=np.full((6, 1), 1), g=[[2], [2]]
        )
        a1, _ = solve_two_stage(inst, mode=APPROXIMATE)
        e1, _ = solve_two_stage(inst, mode=EXACT)
        assert a1.objective_value == e1.objective_value
