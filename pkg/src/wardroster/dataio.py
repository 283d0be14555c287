"""Instance, schedule, and report persistence.

One JSON document per scheduling pool; CSV for the availability form,
the tier chart, and the schedule grid.  Writes are atomic (temp file
plus rename) and byte-stable for identical inputs.
"""

from __future__ import annotations

import dataclasses
import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .calendar import WEEKDAYS, CycleCalendar
from .domain import (
    DomainError,
    Nurse,
    PoolInstance,
    Schedule,
    derive_part_time_demand,
    normalize_preferences,
)
from .tiers import TierChart, TierChartError, assign_minimums, load_tier_chart
from .verify import VerificationReport, parse_schedule, render_schedule

SCHEMA_VERSION = 1

DIRECTIONS = ("ascending", "descending")


class LoadError(DomainError):
    """A located failure while reading external data."""

    def __init__(self, code: str, location: str, message: str):
        self.code = code
        self.location = location
        super().__init__(f"{code} at {location}: {message}")


def _atomic_write(path: str | Path, data: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _require(doc: dict, key: str, location: str):
    if key not in doc:
        raise LoadError("schema", f"{location}.{key}", "missing required field")
    return doc[key]


def _grid(value, shape: tuple[int, int], location: str) -> np.ndarray:
    """Parse a block-major list-of-lists into a (q, r) array."""
    q, r = shape
    if not isinstance(value, list) or len(value) != r:
        raise LoadError("dimension", location, f"expected {r} blocks")
    rows = []
    for k, block in enumerate(value):
        if not isinstance(block, list) or len(block) != q:
            raise LoadError(
                "dimension", f"{location}[{k}]",
                f"expected {q} entries, got {len(block) if isinstance(block, list) else type(block).__name__}",
            )
        rows.append(block)
    return np.asarray(rows, dtype=np.int64).T  # (r, q) -> (q, r)


def _load_calendar(doc: dict) -> CycleCalendar:
    cal = doc.get("calendar", {})
    if not isinstance(cal, dict):
        raise LoadError("schema", "calendar", "must be an object")
    first_weekday = cal.get("first_weekday", "wednesday")
    if first_weekday not in WEEKDAYS:
        raise LoadError("value", "calendar.first_weekday", f"unknown weekday {first_weekday!r}")
    try:
        return CycleCalendar(
            blocks_per_cycle=int(cal.get("blocks_per_cycle", 3)),
            days_per_block=int(cal.get("days_per_block", 14)),
            shifts_per_day=int(cal.get("shifts_per_day", 3)),
            first_weekday=first_weekday,
        )
    except (TypeError, ValueError) as exc:
        raise LoadError("value", "calendar", str(exc)) from exc


def _load_roster(doc: dict) -> tuple[Nurse, ...]:
    raw = _require(doc, "nurses", "$")
    if not isinstance(raw, list) or not raw:
        raise LoadError("schema", "nurses", "must be a non-empty list")
    nurses = []
    seen_ranks: dict[int, str] = {}
    seen_ids: set[str] = set()
    for idx, row in enumerate(raw):
        loc = f"nurses[{idx}]"
        nid = str(_require(row, "id", loc))
        rank = _require(row, "seniority_rank", loc)
        if not isinstance(rank, int):
            raise LoadError("value", f"{loc}.seniority_rank", "must be an integer")
        if nid in seen_ids:
            raise LoadError("reference", loc, f"duplicate nurse id {nid!r}")
        if rank in seen_ranks:
            raise LoadError(
                "rank", loc,
                f"duplicate seniority rank {rank} shared by {seen_ranks[rank]!r} and {nid!r}",
            )
        seen_ids.add(nid)
        seen_ranks[rank] = nid
        nurses.append(Nurse(id=nid, seniority_rank=rank, designation=str(row.get("designation", "RN"))))
    nurses.sort(key=lambda nu: nu.seniority_rank)
    if [nu.seniority_rank for nu in nurses] != list(range(1, len(nurses) + 1)):
        raise LoadError("rank", "nurses", "seniority ranks must be 1..n with no gaps")
    return tuple(nurses)


def _load_demand(doc: dict, shape: tuple[int, int]) -> np.ndarray:
    raw = _require(doc, "demand", "$")
    if isinstance(raw, dict):
        total = _grid(_require(raw, "total", "demand"), shape, "demand.total")
        ft = _grid(_require(raw, "full_time_assignments", "demand"), shape, "demand.full_time_assignments")
        leaves = _grid(raw.get("full_time_leaves", np.zeros(shape).T.tolist()), shape, "demand.full_time_leaves")
        try:
            return derive_part_time_demand(total, ft, leaves)
        except DomainError as exc:
            raise LoadError("value", "demand", str(exc)) from exc
    return _grid(raw, shape, "demand")


def _load_minimums(doc: dict, nurses: tuple[Nurse, ...], blocks: int, base: Path) -> np.ndarray:
    n = len(nurses)
    if "minimums" in doc:
        raw = doc["minimums"]
        g = np.zeros((n, blocks), dtype=np.int64)
        for i, nurse in enumerate(nurses):
            if nurse.id not in raw:
                raise LoadError("reference", f"minimums.{nurse.id}", "nurse missing from minimums")
            row = raw[nurse.id]
            if not isinstance(row, list) or len(row) != blocks:
                raise LoadError("dimension", f"minimums.{nurse.id}", f"expected {blocks} entries")
            g[i] = row
        return g
    chart = TierChart()
    if "tier_chart" in doc:
        chart_path = Path(doc["tier_chart"])
        if not chart_path.is_absolute():
            chart_path = base / chart_path
        try:
            chart = load_tier_chart(chart_path)
        except (OSError, TierChartError) as exc:
            raise LoadError("tier", "tier_chart", str(exc)) from exc
    try:
        return assign_minimums(n, blocks, chart)
    except TierChartError as exc:
        raise LoadError("tier", "tier_chart", str(exc)) from exc


def instance_from_document(doc: dict, base: Path | None = None) -> PoolInstance:
    base = base or Path(".")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise LoadError("schema", "schema_version", f"unsupported version {version!r}")
    calendar = _load_calendar(doc)
    nurses = _load_roster(doc)
    n, q, r = len(nurses), calendar.shifts_per_block, calendar.blocks_per_cycle

    direction = doc.get("preference_direction", "ascending")
    if direction not in DIRECTIONS:
        raise LoadError("value", "preference_direction", f"must be one of {DIRECTIONS}")
    raw_avail = _require(doc, "availability", "$")
    score = np.zeros((n, q, r), dtype=np.int64)
    for i, nurse in enumerate(nurses):
        if nurse.id not in raw_avail:
            raise LoadError("reference", f"availability.{nurse.id}", "nurse missing from availability")
        grid = _grid(raw_avail[nurse.id], (q, r), f"availability.{nurse.id}")
        if grid.min() < 0 or grid.max() > 3:
            raise LoadError("value", f"availability.{nurse.id}", "scores must lie in 0..3")
        score[i] = normalize_preferences(grid, direction)
    for extra in set(raw_avail) - {nu.id for nu in nurses}:
        raise LoadError("reference", f"availability.{extra}", "unknown nurse id")

    demand = _load_demand(doc, (q, r))
    g = _load_minimums(doc, nurses, r, base)

    carry = np.zeros((n, 2), dtype=np.int64)
    for nid, pair in doc.get("carry_over", {}).items():
        matches = [i for i, nu in enumerate(nurses) if nu.id == nid]
        if not matches:
            raise LoadError("reference", f"carry_over.{nid}", "unknown nurse id")
        if not isinstance(pair, list) or len(pair) != 2 or any(v not in (0, 1) for v in pair):
            raise LoadError("value", f"carry_over.{nid}", "expected a pair of 0/1 values")
        carry[matches[0]] = pair

    try:
        return PoolInstance(
            calendar=calendar,
            nurses=nurses,
            demand=demand,
            y=(score > 0).astype(np.int8),
            score=score.astype(np.int8),
            g=g,
            carry_over=carry,
            g_max=int(doc.get("g_max", 10)),
            weekend_cap=int(doc.get("weekend_cap", 10)),
        )
    except DomainError as exc:
        raise LoadError("value", "$", str(exc)) from exc


def load_instance(path: str | Path) -> PoolInstance:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise LoadError("schema", str(path), f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise LoadError("schema", str(path), "top level must be an object")
    return instance_from_document(doc, base=path.parent)


def instance_to_document(instance: PoolInstance) -> dict:
    cal = instance.calendar
    return {
        "schema_version": SCHEMA_VERSION,
        "calendar": {
            "blocks_per_cycle": cal.blocks_per_cycle,
            "days_per_block": cal.days_per_block,
            "shifts_per_day": cal.shifts_per_day,
            "first_weekday": cal.first_weekday,
        },
        "g_max": instance.g_max,
        "weekend_cap": instance.weekend_cap,
        "preference_direction": "ascending",
        "nurses": [dataclasses.asdict(nu) for nu in instance.nurses],
        "availability": {
            nu.id: instance.score[i].T.tolist() for i, nu in enumerate(instance.nurses)
        },
        "demand": instance.demand.T.tolist(),
        "minimums": {nu.id: instance.g[i].tolist() for i, nu in enumerate(instance.nurses)},
        "carry_over": {
            nu.id: instance.carry_over[i].tolist()
            for i, nu in enumerate(instance.nurses)
            if instance.carry_over[i].any()
        },
    }


def save_instance(instance: PoolInstance, path: str | Path) -> None:
    _atomic_write(path, json.dumps(instance_to_document(instance), indent=2, sort_keys=True) + "\n")


def import_availability_csv(
    path: str | Path, nurses: tuple[Nurse, ...], calendar: CycleCalendar,
    direction: str = "ascending",
) -> tuple[np.ndarray, np.ndarray, list[LoadError]]:
    """Read the collection form: columns nurse_id, block, shift, score.

    Returns (y, score, errors); unlisted cells stay unavailable.  Every
    row either merges or produces a located error — nothing is dropped
    silently.
    """
    import csv as _csv

    if direction not in DIRECTIONS:
        raise LoadError("value", "direction", f"must be one of {DIRECTIONS}")
    n, q, r = len(nurses), calendar.shifts_per_block, calendar.blocks_per_cycle
    by_id = {nu.id: i for i, nu in enumerate(nurses)}
    raw = np.zeros((n, q, r), dtype=np.int64)
    errors: list[LoadError] = []
    with open(path, newline="") as f:
        for lineno, row in enumerate(_csv.DictReader(f), start=2):
            loc = f"{path}:{lineno}"
            try:
                nid = row["nurse_id"]
                block = int(row["block"])
                shift = int(row["shift"])
                sc = int(row["score"])
            except (KeyError, TypeError, ValueError):
                errors.append(LoadError("schema", loc, "expected nurse_id, block, shift, score"))
                continue
            if nid not in by_id:
                errors.append(LoadError("reference", loc, f"unknown nurse {nid!r}"))
                continue
            if not (1 <= block <= r and 1 <= shift <= q):
                errors.append(LoadError("dimension", loc, f"cell ({shift}, {block}) outside grid"))
                continue
            if not 0 <= sc <= 3:
                errors.append(LoadError("value", loc, f"score {sc} outside 0..3"))
                continue
            raw[by_id[nid], shift - 1, block - 1] = sc
    score = normalize_preferences(raw, direction)
    return (score > 0).astype(np.int8), score.astype(np.int8), errors


def save_schedule(schedule: Schedule, instance: PoolInstance, path: str | Path) -> None:
    _atomic_write(path, render_schedule(schedule, instance))


def load_schedule(path: str | Path, instance: PoolInstance) -> Schedule:
    return parse_schedule(Path(path).read_text(), instance)


def _jsonable(obj):
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {k: _jsonable(v) for k, v in dataclasses.asdict(obj).items()}
    if isinstance(obj, dict):
        return {_key(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return round(float(obj), 6)
    if isinstance(obj, float):
        return round(obj, 6)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj


def _key(k):
    if isinstance(k, tuple):
        return ",".join(str(p) for p in k)
    return str(k)


def report_to_document(report: VerificationReport, schedule: Schedule) -> dict:
    return {
        "verdict": report.verdict,
        "general_rule_failures": _jsonable(report.general_rule_failures),
        "armstrong_violations": _jsonable(report.armstrong_violations),
        "code_grid": {
            "codes": {_key(c): v for c, v in sorted(report.code_grid.codes.items())},
            "incomplete": [_key(c) for c in report.code_grid.incomplete],
        },
        "per_nurse_summary": _jsonable(report.per_nurse_summary),
        "preference_summary": _jsonable(report.preference_summary),
        "assigned_total": int(schedule.X.sum()),
        "unfilled_total": int(schedule.S.sum()),
    }


def export_report(report: VerificationReport, schedule: Schedule, path: str | Path) -> None:
    _atomic_write(
        path, json.dumps(report_to_document(report, schedule), indent=2, sort_keys=True) + "\n"
    )
