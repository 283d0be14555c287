"""Independent schedule verification and human-readable rendering.

Everything is recomputed from the schedule and instance alone, so a
report is meaningful for solver output, heuristic output, or a grid a
scheduler edited by hand.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .domain import DomainError, PoolInstance, Schedule
from .rules import (
    EligibilityFlags,
    GeneralRuleFailure,
    RuleViolation,
    check_armstrong,
    check_general_rules,
    compute_deltas,
    compute_eligibility,
)

ACCEPTED = "ACCEPTED"
REJECTED = "REJECTED"


@dataclass(frozen=True)
class CodeGrid:
    """Blocking codes for every available-but-unassigned cell.

    ``codes`` maps (nurse, shift, block) to a string drawn from BDMW;
    ``incomplete`` lists cells with no code at all — such a nurse could
    still have been scheduled, which an accepted schedule never allows.
    """

    codes: dict[tuple[int, int, int], str]
    incomplete: list[tuple[int, int, int]]


@dataclass(frozen=True)
class NurseBlockSummary:
    nurse: int
    block: int
    assigned: int
    minimum: int
    delta: int


@dataclass(frozen=True)
class PreferenceSummary:
    """Score mix of the assignments; percentages are None when nothing
    is assigned (undefined, not zero)."""

    total_assigned: int
    percent_first_preference: float | None
    per_nurse_percent: dict[int, dict[int, float] | None]  # nurse -> score -> %
    per_shift_mean_score: dict[tuple[int, int], float | None]  # (shift, block)


@dataclass(frozen=True)
class VerificationReport:
    verdict: str
    general_rule_failures: list[GeneralRuleFailure]
    armstrong_violations: list[RuleViolation]
    code_grid: CodeGrid
    per_nurse_summary: list[NurseBlockSummary]
    preference_summary: PreferenceSummary

    @property
    def accepted(self) -> bool:
        return self.verdict == ACCEPTED


def build_code_grid(flags: EligibilityFlags, schedule: Schedule, instance: PoolInstance) -> CodeGrid:
    codes: dict[tuple[int, int, int], str] = {}
    incomplete: list[tuple[int, int, int]] = []
    for i, j, k in zip(*np.where((instance.y == 1) & (schedule.X == 0))):
        cell = (int(i), int(j), int(k))
        letters = flags.codes(*cell)
        codes[cell] = letters
        if not letters:
            incomplete.append(cell)
    return CodeGrid(codes=codes, incomplete=incomplete)


def preference_summary(schedule: Schedule, instance: PoolInstance) -> PreferenceSummary:
    X, score = schedule.X, instance.score
    total = int(X.sum())
    pct_first = None
    if total:
        pct_first = 100.0 * int(((X == 1) & (score == 3)).sum()) / total
    per_nurse: dict[int, dict[int, float] | None] = {}
    for i in range(instance.n):
        cnt = int(X[i].sum())
        if cnt == 0:
            per_nurse[i] = None
            continue
        per_nurse[i] = {
            s: 100.0 * int(((X[i] == 1) & (score[i] == s)).sum()) / cnt for s in (1, 2, 3)
        }
    per_shift: dict[tuple[int, int], float | None] = {}
    for j in range(instance.q):
        for k in range(instance.r):
            holders = np.where(X[:, j, k] == 1)[0]
            per_shift[(j, k)] = (
                float(score[holders, j, k].mean()) if holders.size else None
            )
    return PreferenceSummary(
        total_assigned=total,
        percent_first_preference=pct_first,
        per_nurse_percent=per_nurse,
        per_shift_mean_score=per_shift,
    )


def verify(schedule: Schedule, instance: PoolInstance) -> VerificationReport:
    """Full from-scratch feasibility check with audit artifacts."""
    if schedule.X.shape != (instance.n, instance.q, instance.r):
        raise DomainError(
            f"schedule shape {schedule.X.shape} does not match instance "
            f"({instance.n}, {instance.q}, {instance.r})"
        )
    failures = check_general_rules(schedule, instance)
    flags = compute_eligibility(schedule, instance)
    violations = check_armstrong(schedule, instance, flags)
    grid = build_code_grid(flags, schedule, instance)

    deltas = compute_deltas(schedule, instance.g)
    totals = schedule.assigned_per_block()
    per_nurse = [
        NurseBlockSummary(
            nurse=i,
            block=k,
            assigned=int(totals[i, k]),
            minimum=int(instance.g[i, k]),
            delta=int(deltas.delta[i, k]),
        )
        for i in range(instance.n)
        for k in range(instance.r)
    ]

    ok = (
        not failures
        and all(v.justified for v in violations)
        and not grid.incomplete
    )
    return VerificationReport(
        verdict=ACCEPTED if ok else REJECTED,
        general_rule_failures=failures,
        armstrong_violations=violations,
        code_grid=grid,
        per_nurse_summary=per_nurse,
        preference_summary=preference_summary(schedule, instance),
    )


def render_schedule(
    schedule: Schedule, instance: PoolInstance, report: VerificationReport | None = None
) -> str:
    """CSV grid, one section per block, plus per-nurse totals.

    Cells: ``X`` for assigned, blocking code letters for unassigned but
    available, ``.`` for unavailable.  Footer rows carry demand,
    unfilled demand, and the mean preference score of each shift's
    assignees.  The format round-trips through parse_schedule.
    """
    report = report or verify(schedule, instance)
    cal = instance.calendar
    deltas = compute_deltas(schedule, instance.g)
    totals = schedule.assigned_per_block()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for k in range(instance.r):
        header = [f"block {k + 1}"]
        for j in range(instance.q):
            day, slot = cal.day_slot(j)
            mark = "*" if cal.is_weekend_shift(j) else ""
            header.append(f"d{day + 1}s{slot + 1}{mark}")
        w.writerow(header)
        for i in range(instance.n):
            row = [instance.nurses[i].id]
            for j in range(instance.q):
                if schedule.X[i, j, k]:
                    row.append("X")
                elif instance.y[i, j, k]:
                    row.append(report.code_grid.codes.get((i, j, k), ""))
                else:
                    row.append(".")
            w.writerow(row)
        w.writerow(["demand"] + [int(instance.demand[j, k]) for j in range(instance.q)])
        w.writerow(["unfilled"] + [int(schedule.S[j, k]) for j in range(instance.q)])
        means = report.preference_summary.per_shift_mean_score
        w.writerow(
            ["avg_preference"]
            + [
                "" if means[(j, k)] is None else f"{means[(j, k)]:.2f}"
                for j in range(instance.q)
            ]
        )
        w.writerow([])
    w.writerow(["nurse", "block", "assigned", "minimum", "delta"])
    for i in range(instance.n):
        for k in range(instance.r):
            w.writerow(
                [instance.nurses[i].id, k + 1, int(totals[i, k]), int(instance.g[i, k]),
                 int(deltas.delta[i, k])]
            )
    return buf.getvalue()


def parse_schedule(text: str, instance: PoolInstance) -> Schedule:
    """Rebuild (X, S) from a render_schedule export."""
    n, q, r = instance.n, instance.q, instance.r
    X = np.zeros((n, q, r), dtype=np.int8)
    S = np.zeros((q, r), dtype=np.int64)
    rows = list(csv.reader(io.StringIO(text)))
    pos = 0
    for k in range(r):
        head = rows[pos]
        if not head or not head[0].startswith("block"):
            raise DomainError(f"expected block header at row {pos}")
        pos += 1
        for i in range(n):
            row = rows[pos]
            if row[0] != instance.nurses[i].id:
                raise DomainError(f"expected nurse {instance.nurses[i].id} at row {pos}")
            for j in range(q):
                X[i, j, k] = 1 if row[j + 1] == "X" else 0
            pos += 1
        pos += 1  # demand row (data, not re-read)
        unfilled = rows[pos]
        if unfilled[0] != "unfilled":
            raise DomainError(f"expected unfilled row at row {pos}")
        for j in range(q):
            S[j, k] = int(unfilled[j + 1])
        pos += 3  # avg_preference row, blank separator
    return Schedule(X=X, S=S)
