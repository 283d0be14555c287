"""Two-stage integer programs: demand maximization, then preference maximization.

Mode ``approximate`` caps every nurse at their minimum shift requirement
and leaves the surplus to the repair heuristic; mode ``exact`` encodes
the full seniority rule set (deltas, pairwise gap bounds, and the
layered product linearization driving the demand eligibility flag).
Big-M constants are parameterized on the per-block shift cap rather
than hard-coded.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .domain import PoolInstance, Schedule
from .milp import FEASIBLE, INFEASIBLE, OPTIMAL, TIMED_OUT, MilpModel, get_backend

APPROXIMATE = "approximate"
EXACT = "exact"


@dataclass
class StageModel:
    model: MilpModel
    x_index: np.ndarray  # (n, q, r) -> var index
    s_index: np.ndarray  # (q, r) -> var index


@dataclass(frozen=True)
class SolveOutcome:
    status: str
    schedule: Schedule | None
    objective_value: int | None
    stage: int
    wall_time: float


def _carry_term(instance: PoolInstance, i: int, pos: int):
    """Horizon position -> X index triple, carry-over constant, or None."""
    q, r = instance.q, instance.r
    if pos < 0:
        if pos >= -2:
            return ("const", int(instance.carry_over[i, 2 + pos]))
        return None
    if pos >= q * r:
        return None
    k, j = divmod(pos, q)
    return ("var", (i, j, k))


def _window_terms(instance: PoolInstance, x_index, i, j, k, lo, hi):
    """X-variable terms plus carry constant for horizon window [pos+lo, pos+hi]."""
    terms, const = [], 0
    base = k * instance.q + j
    for off in range(lo, hi + 1):
        hit = _carry_term(instance, i, base + off)
        if hit is None:
            continue
        kind, payload = hit
        if kind == "const":
            const += payload
        else:
            ii, jj, kk = payload
            terms.append((int(x_index[ii, jj, kk]), 1.0))
    return terms, const


def _build_general(instance: PoolInstance) -> tuple[MilpModel, dict]:
    n, q, r = instance.n, instance.q, instance.r
    d, y = instance.demand, instance.y
    gmax, cap = instance.g_max, instance.weekend_cap
    m = MilpModel()

    x_index = np.empty((n, q, r), dtype=np.int64)
    for i in range(n):
        for j in range(q):
            for k in range(r):
                x_index[i, j, k] = m.add_var(f"X[{i},{j},{k}]", ub=float(y[i, j, k]))
    s_index = np.empty((q, r), dtype=np.int64)
    for j in range(q):
        for k in range(r):
            s_index[j, k] = m.add_var(f"S[{j},{k}]", ub=float(d[j, k]))

    # Supply balance: assigned + unfilled == demand.
    for j in range(q):
        for k in range(r):
            terms = [(int(x_index[i, j, k]), 1.0) for i in range(n)]
            terms.append((int(s_index[j, k]), 1.0))
            m.add_constraint(terms, "==", float(d[j, k]), tag="supply_balance")

    # Rest window: no two assigned shifts within two positions (carry-aware).
    for i in range(n):
        for k in range(r):
            for j in range(q):
                terms, const = _window_terms(instance, x_index, i, j, k, -2, 0)
                if len(terms) + (1 if const else 0) > 1:
                    # Carried-over history is data: one carried shift already
                    # vetoes the window, a second adds nothing.
                    m.add_constraint(terms, "<=", 1.0 - min(const, 1), tag="rest_window")

    # Per-block cap flag (one per nurse-block; identical across shifts).
    fmax_index = np.empty((n, r), dtype=np.int64)
    for i in range(n):
        for k in range(r):
            fmax_index[i, k] = m.add_var(f"Fmaxout[{i},{k}]")
            block = [(int(x_index[i, j, k]), 1.0) for j in range(q)]
            m.add_constraint(block + [(int(fmax_index[i, k]), 1.0)], "<=", float(gmax), tag="maxout_flag_ub")
            m.add_constraint(block + [(int(fmax_index[i, k]), float(gmax))], ">=", float(gmax), tag="maxout_flag_lb")

    # Weekend-cap flag, one per nurse (constant 1 on weekdays).
    weekend_shifts = sorted(instance.calendar.weekend_shifts)
    fw_index = np.empty(n, dtype=np.int64)
    for i in range(n):
        fw_index[i] = m.add_var(f"Fweekend[{i}]")
        wk = [(int(x_index[i, j, k]), 1.0) for j in weekend_shifts for k in range(r)]
        if wk:
            m.add_constraint(wk + [(int(fw_index[i]), 1.0)], "<=", float(cap), tag="weekend_flag_ub")
            m.add_constraint(wk + [(int(fw_index[i]), float(cap))], ">=", float(cap), tag="weekend_flag_lb")
        else:
            m.add_constraint([(int(fw_index[i]), 1.0)], "==", 1.0, tag="weekend_flag_fixed")

    indices = {
        "x": x_index,
        "s": s_index,
        "fmax": fmax_index,
        "fw": fw_index,
        "weekend_shifts": weekend_shifts,
        # Cells that can ever carry an eligibility flag: flag variables for
        # the rest are data-determined zeros and never enter the model.
        "active": (instance.y == 1) & (instance.demand[None, :, :] > 0),
    }
    return m, indices


def _add_combined_flags(m: MilpModel, instance: PoolInstance, ix: dict, fdem_index: np.ndarray):
    """Back-to-back flag, combined eligibility flag F, per-block M.

    Only active cells (available, positive demand) get flag variables;
    everywhere else the combined flag is a data-determined zero.
    """
    n, q, r = instance.n, instance.q, instance.r
    weekend = set(ix["weekend_shifts"])
    active = ix["active"]
    x_index = ix["x"]
    f_index = np.empty((n, q, r), dtype=np.int64)
    m_index = np.empty((n, r), dtype=np.int64)
    for i in range(n):
        for k in range(r):
            for j in range(q):
                if not active[i, j, k]:
                    f_index[i, j, k] = m.fix_var(f"F[{i},{j},{k}]", 0.0)
                    continue
                f_index[i, j, k] = m.add_var(f"F[{i},{j},{k}]")
                fbb = m.add_var(f"Fb2b[{i},{j},{k}]")
                terms_w, const_w = _window_terms(instance, x_index, i, j, k, -2, 2)
                m.add_constraint(terms_w + [(fbb, 5.0)], "<=", 5.0 - const_w, tag="b2b_flag_ub")
                m.add_constraint(terms_w + [(fbb, 1.0)], ">=", 1.0 - const_w, tag="b2b_flag_lb")

                terms = [(int(fdem_index[i, j, k]), 1.0)]
                const = 1.0  # availability flag is data (active => available)
                const += 0.0 if j in weekend else 1.0
                if j in weekend:
                    terms.append((int(ix["fw"][i]), 1.0))
                terms.append((int(ix["fmax"][i, k]), 1.0))
                terms.append((fbb, 1.0))
                # all five flags 1 => F = 1;  any flag zero => F = 0
                m.add_constraint(
                    terms + [(int(f_index[i, j, k]), -1.0)], "<=", 4.0 - const, tag="combined_flag_lb"
                )
                m.add_constraint(
                    [(int(f_index[i, j, k]), 5.0)] + [(v, -c) for v, c in terms],
                    "<=",
                    const,
                    tag="combined_flag_ub",
                )
            m_index[i, k] = m.add_var(f"M[{i},{k}]")
            row = [(int(f_index[i, j, k]), 1.0) for j in range(q) if active[i, j, k]]
            m.add_constraint(row + [(int(m_index[i, k]), 1.0)], ">=", 1.0, tag="block_maxed_lb")
            for v, _ in row:
                m.add_constraint(
                    [(v, 1.0), (int(m_index[i, k]), 1.0)], "<=", 1.0, tag="block_maxed_ub"
                )
    ix["f"] = f_index
    ix["m"] = m_index


def _add_approximate_set(m: MilpModel, instance: PoolInstance, ix: dict):
    n, q, r = instance.n, instance.q, instance.r
    d, g = instance.demand, instance.g
    x = ix["x"]

    # Demand flag = "seniors have not yet consumed the demand".
    active = ix["active"]
    fdem = np.empty((n, q, r), dtype=np.int64)
    for j in range(q):
        for k in range(r):
            fdem[0, j, k] = m.fix_var(f"Fdem[0,{j},{k}]", 1.0 if d[j, k] > 0 else 0.0)
            for i in range(1, n):
                if not active[i, j, k]:
                    fdem[i, j, k] = m.fix_var(f"Fdem[{i},{j},{k}]", 0.0)
                    continue
                fdem[i, j, k] = m.add_var(f"Fdem[{i},{j},{k}]")
                seniors = [(int(x[i2, j, k]), 1.0) for i2 in range(i)]
                m.add_constraint(
                    seniors + [(int(fdem[i, j, k]), 1.0)], "<=", float(d[j, k]), tag="capped_demand_flag_ub"
                )
                m.add_constraint(
                    seniors + [(int(fdem[i, j, k]), float(d[j, k]))],
                    ">=",
                    float(d[j, k]),
                    tag="capped_demand_flag_lb",
                )
    _add_combined_flags(m, instance, ix, fdem)

    # Seniority-ordered fill up to (and capped at) the minimum.
    sigma = np.empty((n, r), dtype=np.int64)
    theta = np.empty((n, r), dtype=np.int64)
    for i in range(n):
        for k in range(r):
            sigma[i, k] = m.add_var(f"sigma[{i},{k}]")
            theta[i, k] = m.add_var(f"theta[{i},{k}]")
    for k in range(r):
        for i in range(n - 1):
            m.add_constraint(
                [(int(sigma[i, k]), 1.0), (int(sigma[i + 1, k]), -1.0)], ">=", 0.0, tag="fill_order"
            )
        for i in range(n):
            m.add_constraint(
                [
                    (int(sigma[i, k]), 1.0),
                    (int(theta[i, k]), -1.0),
                    (int(ix["m"][i, k]), -1.0),
                ],
                "<=",
                0.0,
                tag="fill_gate",
            )
            block = [(int(x[i, j, k]), 1.0) for j in range(q)]
            m.add_constraint(
                block + [(int(theta[i, k]), -float(g[i, k]))], ">=", 0.0, tag="minimum_met_lb"
            )
            m.add_constraint(
                block + [(int(sigma[i, k]), -1.0)], "<=", float(g[i, k]) - 1.0, tag="minimum_met_ub"
            )


def _and_var(m: MilpModel, name: str, left: int, right: int, tags: tuple[str, str, str]) -> int:
    """Binary product z = left AND right via the standard three rows."""
    z = m.add_var(name)
    m.add_constraint([(z, 1.0), (left, -1.0)], "<=", 0.0, tag=tags[0])
    m.add_constraint([(z, 1.0), (right, -1.0)], "<=", 0.0, tag=tags[1])
    m.add_constraint([(z, 1.0), (left, -1.0), (right, -1.0)], ">=", -1.0, tag=tags[2])
    return z


def _add_exact_armstrong(m: MilpModel, instance: PoolInstance, ix: dict):
    n, q, r = instance.n, instance.q, instance.r
    d, g, gmax = instance.demand, instance.g, instance.g_max
    x = ix["x"]
    pairs = [(i, i2) for i in range(n - 1) for i2 in range(i + 1, n)]

    delta = np.empty((n, r), dtype=np.int64)
    theta = np.empty((n, r), dtype=np.int64)
    pi = np.empty((n, r), dtype=np.int64)
    alpha = np.empty((n, r), dtype=np.int64)
    for i in range(n):
        for k in range(r):
            gi = float(g[i, k])
            delta[i, k] = m.add_var(f"delta[{i},{k}]", lb=-gi, ub=float(gmax) - gi)
            theta[i, k] = m.add_var(f"thetaE[{i},{k}]")
            pi[i, k] = m.add_var(f"pi[{i},{k}]")
            alpha[i, k] = m.add_var(f"alpha[{i},{k}]")
            block = [(int(x[i, j, k]), 1.0) for j in range(q)]
            m.add_constraint(block + [(int(delta[i, k]), -1.0)], "==", gi, tag="delta_def")
            m.add_constraint(
                [(int(delta[i, k]), 1.0), (int(theta[i, k]), -gi)], ">=", -gi, tag="met_flag_lb"
            )
            # Theta activation: the printed upper coefficient is one short, which
            # would bar a nurse from ever reaching the block cap; widened by one.
            m.add_constraint(
                [(int(delta[i, k]), 1.0), (int(theta[i, k]), -(gmax - gi + 1.0))],
                "<=",
                -1.0,
                tag="met_flag_ub",
            )
            m.add_constraint(
                [(int(delta[i, k]), 1.0), (int(pi[i, k]), -(gi + 1.0))], ">=", -gi, tag="exceeded_flag_lb"
            )
            m.add_constraint(
                [(int(delta[i, k]), 1.0), (int(pi[i, k]), -(gmax - gi))], "<=", 0.0, tag="exceeded_flag_ub"
            )

    # Per-cell product a = X and (not pi).  Cells the
    # nurse cannot hold (or with no demand) contribute constant zeros.
    a = np.empty((n, q, r), dtype=np.int64)
    for i in range(n):
        for k in range(r):
            for j in range(q):
                if d[j, k] == 0 or not instance.y[i, j, k]:
                    a[i, j, k] = m.fix_var(f"a[{i},{j},{k}]", 0.0)
                    continue
                a[i, j, k] = m.add_var(f"a[{i},{j},{k}]")
                m.add_constraint(
                    [(int(a[i, j, k]), 1.0), (int(pi[i, k]), 1.0)], "<=", 1.0, tag="at_min_hold_a"
                )
                m.add_constraint(
                    [(int(a[i, j, k]), 1.0), (int(x[i, j, k]), -1.0)], "<=", 0.0, tag="at_min_hold_b"
                )
                m.add_constraint(
                    [(int(a[i, j, k]), 1.0), (int(x[i, j, k]), -1.0), (int(pi[i, k]), 1.0)],
                    ">=",
                    0.0,
                    tag="at_min_hold_c",
                )

    # Pairwise delta-comparison indicators and their shift-level products.
    l_idx: dict[tuple[int, int, int], int] = {}
    t_idx: dict[tuple[int, int, int], int] = {}
    b_idx: dict[tuple[int, int, int, int], int] = {}
    p_idx: dict[tuple[int, int, int, int], int] = {}
    v_idx: dict[tuple[int, int, int, int], int] = {}
    for i, i2 in pairs:
        for k in range(r):
            gi, gi2 = float(g[i, k]), float(g[i2, k])
            lv = m.add_var(f"l[{i},{i2},{k}]")
            tv = m.add_var(f"t[{i},{i2},{k}]")
            l_idx[i, i2, k] = lv
            t_idx[i, i2, k] = tv
            b1 = gmax - gi + gi2 + 1.0
            m.add_constraint(
                [(int(delta[i, k]), 1.0), (int(delta[i2, k]), -1.0), (lv, b1)],
                "<=",
                1.0 + b1,
                tag="level_gap_a",
            )
            b2 = gmax - gi2 + gi + 2.0
            m.add_constraint(
                [(int(delta[i, k]), 1.0), (int(delta[i2, k]), -1.0), (lv, b2)],
                ">=",
                2.0,
                tag="level_gap_b",
            )
            b3 = gmax - gi2 + gi
            m.add_constraint(
                [(int(delta[i2, k]), 1.0), (int(delta[i, k]), -1.0), (tv, b3)],
                "<=",
                b3,
                tag="trail_gap_a",
            )
            b4 = gmax - gi + gi2 + 1.0
            m.add_constraint(
                [(int(delta[i2, k]), 1.0), (int(delta[i, k]), -1.0), (tv, b4)],
                ">=",
                1.0,
                tag="trail_gap_b",
            )
            for j in range(q):
                if d[j, k] == 0:
                    continue
                if instance.y[i, j, k]:
                    # b = a_senior and (not theta_junior)
                    bv = m.add_var(f"b[{i},{i2},{j},{k}]")
                    m.add_constraint(
                        [(bv, 1.0), (int(theta[i2, k]), 1.0)], "<=", 1.0, tag="junior_level_hold_a"
                    )
                    m.add_constraint([(bv, 1.0), (int(a[i, j, k]), -1.0)], "<=", 0.0, tag="junior_level_hold_b")
                    m.add_constraint(
                        [(bv, 1.0), (int(a[i, j, k]), -1.0), (int(theta[i2, k]), 1.0)],
                        ">=",
                        0.0,
                        tag="junior_level_hold_c",
                    )
                    hv = _and_var(m, f"h[{i},{i2},{j},{k}]", lv, int(x[i, j, k]), ("level_hold_and_a", "level_hold_and_b", "level_hold_and_c"))
                    pv = _and_var(m, f"p[{i},{i2},{j},{k}]", hv, int(theta[i2, k]), ("senior_protector_and_a", "senior_protector_and_b", "senior_protector_and_c"))
                else:
                    bv = m.fix_var(f"b[{i},{i2},{j},{k}]", 0.0)
                    pv = m.fix_var(f"p[{i},{i2},{j},{k}]", 0.0)
                b_idx[i, i2, j, k] = bv
                p_idx[i, i2, j, k] = pv
                if instance.y[i2, j, k]:
                    uv = _and_var(m, f"u[{i},{i2},{j},{k}]", tv, int(x[i2, j, k]), ("junior_hold_and_a", "junior_hold_and_b", "junior_hold_and_c"))
                    v_idx[i, i2, j, k] = _and_var(
                        m, f"v[{i},{i2},{j},{k}]", uv, int(theta[i, k]), ("junior_protector_and_a", "junior_protector_and_b", "junior_protector_and_c")
                    )
                else:
                    v_idx[i, i2, j, k] = m.fix_var(f"v[{i},{i2},{j},{k}]", 0.0)

    # Demand eligibility flags: who still protects each unit.
    active = ix["active"]
    fdem = np.empty((n, q, r), dtype=np.int64)
    for i in range(n):
        for k in range(r):
            for j in range(q):
                if not active[i, j, k]:
                    fdem[i, j, k] = m.fix_var(f"Fdem[{i},{j},{k}]", 0.0)
                    continue
                djk = float(d[j, k])
                fminus = m.add_var(f"Fminus[{i},{j},{k}]")
                fplus = m.add_var(f"Fplus[{i},{j},{k}]")
                below = [(b_idx[i2, i, j, k], 1.0) for i2 in range(i)]
                m.add_constraint(below + [(fminus, 1.0)], "<=", djk, tag="senior_unprotected_count_ub")
                m.add_constraint(below + [(fminus, djk)], ">=", djk, tag="senior_unprotected_count_lb")
                above = [(p_idx[i2, i, j, k], 1.0) for i2 in range(i)]
                above += [(v_idx[i, i2, j, k], 1.0) for i2 in range(i + 1, n)]
                m.add_constraint(above + [(fplus, 1.0)], "<=", djk, tag="protector_count_ub")
                m.add_constraint(above + [(fplus, djk)], ">=", djk, tag="protector_count_lb")
                fd = m.add_var(f"Fdem[{i},{j},{k}]")
                fdem[i, j, k] = fd
                th = int(theta[i, k])
                m.add_constraint([(fd, 1.0), (fminus, -1.0), (th, -1.0)], "<=", 0.0, tag="demand_flag_link_a")
                m.add_constraint([(fd, 1.0), (fplus, -1.0), (th, 1.0)], "<=", 1.0, tag="demand_flag_link_b")
                m.add_constraint([(fd, 1.0), (fplus, -1.0), (th, -1.0)], ">=", -1.0, tag="demand_flag_link_c")
                m.add_constraint([(fd, 1.0), (fminus, -1.0), (th, 1.0)], ">=", 0.0, tag="demand_flag_link_d")

    _add_combined_flags(m, instance, ix, fdem)

    # Rules 1A/1B and Rule 2, with M-based exceptions.
    for i in range(n):
        for k in range(r):
            m.add_constraint(
                [
                    (int(alpha[i, k]), 1.0),
                    (int(ix["m"][i, k]), -1.0),
                    (int(theta[i, k]), -1.0),
                ],
                "<=",
                0.0,
                tag="exception_gate",
            )
    for i, i2 in pairs:
        for k in range(r):
            gi, gi2 = float(g[i, k]), float(g[i2, k])
            m.add_constraint(
                [(int(delta[i2, k]), 1.0), (int(alpha[i, k]), -float(gmax))],
                "<=",
                -gi2,
                tag="rule1a",
            )
            m.add_constraint(
                [(int(delta[i, k]), 1.0), (int(alpha[i2, k]), -(gmax - gi))],
                "<=",
                0.0,
                tag="rule1b",
            )
            beta = m.add_var(f"beta[{i},{i2},{k}]")
            gamma = m.add_var(f"gamma[{i},{i2},{k}]")
            m.add_constraint(
                [
                    (beta, 1.0),
                    (int(theta[i, k]), 1.0),
                    (int(theta[i2, k]), 1.0),
                    (int(ix["m"][i, k]), -1.0),
                ],
                "<=",
                2.0,
                tag="rule2_senior_gate",
            )
            m.add_constraint(
                [
                    (gamma, 1.0),
                    (int(theta[i, k]), 1.0),
                    (int(theta[i2, k]), 1.0),
                    (int(ix["m"][i2, k]), -1.0),
                ],
                "<=",
                2.0,
                tag="rule2_junior_gate",
            )
            m.add_constraint(
                [
                    (int(delta[i, k]), 1.0),
                    (int(delta[i2, k]), -1.0),
                    (gamma, -(gmax - gi + gi2 - 1.0)),
                ],
                "<=",
                1.0,
                tag="rule2_gap_ub",
            )
            m.add_constraint(
                [
                    (int(delta[i2, k]), 1.0),
                    (int(delta[i, k]), -1.0),
                    (beta, -(gmax - gi2 + gi)),
                ],
                "<=",
                0.0,
                tag="rule2_gap_lb",
            )


def build_stage1(instance: PoolInstance, mode: str) -> StageModel:
    m, ix = _build_general(instance)
    if mode == APPROXIMATE:
        _add_approximate_set(m, instance, ix)
    elif mode == EXACT:
        _add_exact_armstrong(m, instance, ix)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    s = ix["s"]
    m.set_objective({int(s[j, k]): 1.0 for j in range(instance.q) for k in range(instance.r)}, "min")
    return StageModel(model=m, x_index=ix["x"], s_index=ix["s"])


def build_stage2(instance: PoolInstance, demand_star: int, mode: str) -> StageModel:
    if demand_star > instance.total_demand:
        raise ValueError("satisfiable demand cannot exceed total demand")
    sm = build_stage1(instance, mode)
    m, s = sm.model, sm.s_index
    # Hold the preference stage at the demand-stage optimum.
    m.add_constraint(
        [(int(s[j, k]), 1.0) for j in range(instance.q) for k in range(instance.r)],
        "<=",
        float(instance.total_demand - demand_star),
        tag="demand_level",
    )
    m.set_objective(
        {
            int(sm.x_index[i, j, k]): float(instance.score[i, j, k])
            for i in range(instance.n)
            for j in range(instance.q)
            for k in range(instance.r)
            if instance.score[i, j, k] > 0
        },
        "max",
    )
    return sm


def _extract_schedule(instance: PoolInstance, sm: StageModel, values: np.ndarray) -> Schedule:
    X = np.rint(values[sm.x_index]).astype(np.int8)
    S = instance.demand - X.sum(axis=0)
    return Schedule(X=X, S=S.astype(np.int64))


def solve_two_stage(
    instance: PoolInstance,
    mode: str = APPROXIMATE,
    time_limit_per_stage: float | None = None,
    backend_name: str | None = None,
) -> tuple[SolveOutcome, SolveOutcome | None]:
    """Run the demand stage then the preference stage.

    Returns (stage1, stage2); stage2 is None when stage 1 produced no
    incumbent (timed out).  Infeasibility is an internal error: the
    slack variables make the demand stage feasible by construction.
    """
    backend = get_backend(backend_name)

    sm1 = build_stage1(instance, mode)
    res1 = backend.solve(sm1.model, time_limit=time_limit_per_stage)
    if res1.status == INFEASIBLE:
        raise RuntimeError("demand stage reported infeasible; model construction bug")
    if res1.status == TIMED_OUT:
        return SolveOutcome(TIMED_OUT, None, None, 1, res1.wall_time), None
    demand_star = instance.total_demand - int(round(res1.objective))
    out1 = SolveOutcome(
        res1.status, _extract_schedule(instance, sm1, res1.values), demand_star, 1, res1.wall_time
    )

    sm2 = build_stage2(instance, demand_star, mode)
    res2 = backend.solve(sm2.model, time_limit=time_limit_per_stage)
    if res2.status == INFEASIBLE:
        raise RuntimeError("preference stage reported infeasible; model construction bug")
    if res2.status == TIMED_OUT:
        return out1, SolveOutcome(TIMED_OUT, None, None, 2, res2.wall_time)
    out2 = SolveOutcome(
        res2.status,
        _extract_schedule(instance, sm2, res2.values),
        int(round(res2.objective)),
        2,
        res2.wall_time,
    )
    return out1, out2
