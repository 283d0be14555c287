"""Seniority-rule machinery: deltas, per-shift eligibility flags, rule checks.

All quantities here are pure functions of a schedule and its pool
instance; the verifier, the exhaustive oracle, and the repair heuristic
all share them so that "feasible" means exactly one thing everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .domain import PoolInstance, Schedule

CODE_LETTERS = {
    "backtoback": "B",
    "demand": "D",
    "maxout": "M",
    "weekend": "W",
}


@dataclass(frozen=True)
class DeltaTable:
    """Per-nurse per-block shift surplus over the minimum requirement."""

    delta: np.ndarray  # (n, r) int: assigned minus minimum
    theta: np.ndarray  # (n, r) 0/1: delta >= 0 (minimum met or exceeded)
    pi: np.ndarray     # (n, r) 0/1: delta >= 1 (minimum exceeded)


def compute_deltas(schedule: Schedule, g: np.ndarray) -> DeltaTable:
    totals = schedule.assigned_per_block()
    if totals.shape != g.shape:
        raise ValueError(f"schedule totals {totals.shape} do not match g {g.shape}")
    delta = totals - g
    return DeltaTable(
        delta=delta,
        theta=(delta >= 0).astype(np.int8),
        pi=(delta >= 1).astype(np.int8),
    )


@dataclass(frozen=True)
class EligibilityFlags:
    """Per (nurse, shift, block) obstacle flags, 1 = no obstacle.

    ``combined`` is the AND of the five flags; ``blocked`` marks nurses
    who cannot take any further shift in a block (every combined flag 0).
    """

    available: np.ndarray
    maxout: np.ndarray
    backtoback: np.ndarray
    weekend: np.ndarray
    demand: np.ndarray
    combined: np.ndarray   # (n, q, r)
    blocked: np.ndarray    # (n, r)

    def codes(self, i: int, j: int, k: int) -> str:
        """Blocking code letters for one cell, in B/D/M/W order."""
        out = []
        for name, letter in (("backtoback", "B"), ("demand", "D"), ("maxout", "M"), ("weekend", "W")):
            if getattr(self, name)[i, j, k] == 0:
                out.append(letter)
        return "".join(out)


def _backtoback_flags(X: np.ndarray, carry: np.ndarray) -> np.ndarray:
    """1 where no assigned shift (incl. the cell itself) lies within two
    shift positions, counting carry-over at the horizon start."""
    n, q, r = X.shape
    flat = X.transpose(0, 2, 1).reshape(n, r * q)  # per nurse: block-major shift sequence
    seq = np.concatenate([carry.astype(np.int64), flat], axis=1)
    padded = np.pad(seq, ((0, 0), (2, 2)))
    csum = np.concatenate([np.zeros((n, 1), dtype=np.int64), np.cumsum(padded, axis=1)], axis=1)
    win = csum[:, 5:] - csum[:, :-5]  # sum of seq[pos-2 .. pos+2] at each pos
    flags = (win[:, 2:] == 0).astype(np.int8)  # drop carry positions
    return flags.reshape(n, r, q).transpose(0, 2, 1)


def compute_eligibility(
    schedule: Schedule, instance: PoolInstance, deltas: DeltaTable | None = None
) -> EligibilityFlags:
    n, q, r = instance.n, instance.q, instance.r
    X, d = schedule.X, instance.demand
    deltas = deltas or compute_deltas(schedule, instance.g)
    delta, theta, pi = deltas.delta, deltas.theta, deltas.pi

    available = instance.y.astype(np.int8)

    totals = schedule.assigned_per_block()
    maxout = np.broadcast_to(
        (totals[:, None, :] < instance.g_max), (n, q, r)
    ).astype(np.int8)

    backtoback = _backtoback_flags(X, instance.carry_over)

    weekend_shifts = sorted(instance.calendar.weekend_shifts)
    weekend = np.ones((n, q, r), dtype=np.int8)
    if weekend_shifts:
        wk_totals = X[:, weekend_shifts, :].sum(axis=(1, 2))
        at_cap = wk_totals >= instance.weekend_cap
        weekend[np.ix_(np.where(at_cap)[0], weekend_shifts, range(r))] = 0

    # Demand flag: can the nurse still receive this shift under the
    # seniority allocation, given who currently holds its demand?
    # Below minimum: only senior holders still at/below their own minimum
    # protect a unit.  At/above minimum: seniors with delta <= delta_i + 1
    # and juniors with delta <= delta_i protect theirs.
    demand = np.zeros((n, q, r), dtype=np.int8)
    for i in range(n):
        for k in range(r):
            if theta[i, k] == 0:
                protected = X[:i, :, k] * (1 - pi[:i, None, k])
                cnt = protected.sum(axis=0)
            else:
                senior = X[:i, :, k] * (delta[:i, None, k] <= delta[i, k] + 1)
                junior = X[i + 1:, :, k] * (delta[i + 1:, None, k] <= delta[i, k])
                cnt = senior.sum(axis=0) + junior.sum(axis=0)
            demand[i, :, k] = cnt < d[:, k]

    combined = (available & maxout & backtoback & weekend & demand).astype(np.int8)
    blocked = (combined.sum(axis=1) == 0).astype(np.int8)
    return EligibilityFlags(
        available=available,
        maxout=maxout,
        backtoback=backtoback,
        weekend=weekend,
        demand=demand,
        combined=combined,
        blocked=blocked,
    )


@dataclass(frozen=True)
class RuleViolation:
    """One seniority-rule breach between a nurse pair in a block.

    ``justified`` marks an allowed exception: the deficient nurse cannot
    receive any further shift in the block, evidenced by the blocking
    codes of every shift they are available for.
    """

    rule: str                 # "1A" | "1B" | "2"
    block: int
    senior: int               # nurse index (0-based, seniority order)
    junior: int
    deficient: int
    justified: bool
    justification: dict[int, str] = field(default_factory=dict)


def _evidence(flags: EligibilityFlags, instance: PoolInstance, i: int, k: int) -> dict[int, str]:
    out = {}
    for j in range(instance.q):
        if instance.y[i, j, k]:
            codes = flags.codes(i, j, k)
            if codes:
                out[j] = codes
    return out


def check_armstrong(
    schedule: Schedule,
    instance: PoolInstance,
    flags: EligibilityFlags | None = None,
) -> list[RuleViolation]:
    """All seniority-rule breaches, each tagged justified or not.

    Rule 1A: a below-minimum senior bars juniors from holding any shift.
    Rule 1B: a below-minimum junior bars seniors from exceeding minimum.
    Rule 2: above minimums, delta gaps between a pair stay within [0, 1].
    A breach is justified exactly when the disadvantaged nurse is blocked
    on every shift of the block.
    """
    deltas = compute_deltas(schedule, instance.g)
    flags = flags or compute_eligibility(schedule, instance, deltas)
    delta = deltas.delta
    out: list[RuleViolation] = []

    def emit(rule: str, k: int, i: int, i2: int, deficient: int) -> None:
        justified = bool(flags.blocked[deficient, k])
        out.append(
            RuleViolation(
                rule=rule,
                block=k,
                senior=i,
                junior=i2,
                deficient=deficient,
                justified=justified,
                justification=_evidence(flags, instance, deficient, k) if justified else {},
            )
        )

    for k in range(instance.r):
        for i in range(instance.n - 1):
            for i2 in range(i + 1, instance.n):
                di, dj = int(delta[i, k]), int(delta[i2, k])
                if di < 0 and dj > -int(instance.g[i2, k]):
                    emit("1A", k, i, i2, deficient=i)
                elif dj < 0 and di > 0:
                    emit("1B", k, i, i2, deficient=i2)
                elif di >= 0 and dj >= 0:
                    if di < dj:
                        emit("2", k, i, i2, deficient=i)
                    elif di > dj + 1:
                        emit("2", k, i, i2, deficient=i2)
    return out


def unjustified(violations: list[RuleViolation]) -> list[RuleViolation]:
    return [v for v in violations if not v.justified]


@dataclass(frozen=True)
class GeneralRuleFailure:
    rule: str  # overbooking | availability | back_to_back | max_shifts | weekend_cap
    nurse: int | None
    shift: int | None
    block: int | None
    detail: str


def check_general_rules(schedule: Schedule, instance: PoolInstance) -> list[GeneralRuleFailure]:
    """Breaches of the non-negotiable scheduling rules, empty if clean."""
    n, q, r = instance.n, instance.q, instance.r
    X, S, d = schedule.X, schedule.S, instance.demand
    out: list[GeneralRuleFailure] = []

    supply = X.sum(axis=0) + S
    for j, k in zip(*np.where((supply != d) | (S < 0))):
        out.append(
            GeneralRuleFailure(
                "overbooking", None, int(j), int(k),
                f"assigned {int(X[:, j, k].sum())} + unfilled {int(S[j, k])} != demand {int(d[j, k])}",
            )
        )

    for i, j, k in zip(*np.where((X == 1) & (instance.y == 0))):
        out.append(
            GeneralRuleFailure(
                "availability", int(i), int(j), int(k),
                "nurse assigned to a shift they are unavailable for",
            )
        )

    totals = schedule.assigned_per_block()
    for i, k in zip(*np.where(totals > instance.g_max)):
        out.append(
            GeneralRuleFailure(
                "max_shifts", int(i), None, int(k),
                f"{int(totals[i, k])} shifts assigned, maximum is {instance.g_max}",
            )
        )

    flat = X.transpose(0, 2, 1).reshape(n, r * q)
    seq = np.concatenate([instance.carry_over.astype(np.int64), flat], axis=1)
    for i in range(n):
        positions = np.where(seq[i] == 1)[0]
        gaps = np.diff(positions)
        for idx in np.where(gaps <= 2)[0]:
            if positions[idx + 1] < 2:
                continue  # both ends sit in the carried-over history
            pos = int(positions[idx + 1]) - 2
            k, j = divmod(pos, q)
            out.append(
                GeneralRuleFailure(
                    "back_to_back", int(i), j, k,
                    "two assigned shifts within two shift positions",
                )
            )

    weekend_shifts = sorted(instance.calendar.weekend_shifts)
    if weekend_shifts:
        wk_totals = X[:, weekend_shifts, :].sum(axis=(1, 2))
        for i in np.where(wk_totals > instance.weekend_cap)[0]:
            out.append(
                GeneralRuleFailure(
                    "weekend_cap", int(i), None, None,
                    f"{int(wk_totals[i])} weekend shifts in cycle, cap is {instance.weekend_cap}",
                )
            )
    return out
