"""Seniority tier chart and per-nurse minimum shift requirements.

The tier chart is configuration, not code: it maps (pool size, seniority
rank) to a tier and its per-block minimum shift count.  Defaults cover
the pool sizes we have authoritative columns for; any other size needs
an explicit chart or per-nurse overrides.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

TIER_MINIMUMS = {1: 8, 2: 6, 3: 4, 4: 3}

# Chart columns with known rank->tier bands.
_DEFAULT_COLUMNS: dict[int, list[int]] = {
    1: [1],
    7: [1, 1, 2, 2, 3, 3, 4],
    9: [1, 1, 1, 2, 2, 3, 3, 4, 4],
}


class TierChartError(ValueError):
    pass


@dataclass(frozen=True)
class TierChart:
    """Mapping (pool_size, seniority_rank) -> (tier, min shifts per block)."""

    columns: dict[int, list[tuple[int, int]]] = field(
        default_factory=lambda: {
            size: [(t, TIER_MINIMUMS[t]) for t in tiers]
            for size, tiers in _DEFAULT_COLUMNS.items()
        }
    )

    def __post_init__(self):
        for size, col in self.columns.items():
            if len(col) != size:
                raise TierChartError(f"chart column for pool size {size} has {len(col)} rows")
            tiers = [t for t, _ in col]
            mins = [m for _, m in col]
            if any(b < a for a, b in zip(tiers, tiers[1:])):
                raise TierChartError(f"tiers must be non-decreasing in rank (pool size {size})")
            if any(b > a for a, b in zip(mins, mins[1:])):
                raise TierChartError(f"minimums must be non-increasing in rank (pool size {size})")

    def has_size(self, pool_size: int) -> bool:
        return pool_size in self.columns

    def lookup(self, pool_size: int, rank: int) -> tuple[int, int]:
        if pool_size not in self.columns:
            raise TierChartError(f"tier chart has no column for pool size {pool_size}")
        if not 1 <= rank <= pool_size:
            raise TierChartError(f"rank {rank} out of range for pool size {pool_size}")
        return self.columns[pool_size][rank - 1]


def load_tier_chart(path: str | Path) -> TierChart:
    """Load a chart from CSV with columns pool_size, seniority_rank, tier, min_shifts."""
    rows: dict[int, dict[int, tuple[int, int]]] = {}
    with open(path, newline="") as f:
        for lineno, row in enumerate(csv.DictReader(f), start=2):
            try:
                size = int(row["pool_size"])
                rank = int(row["seniority_rank"])
                tier = int(row["tier"])
                mins = int(row["min_shifts"])
            except (KeyError, TypeError, ValueError) as exc:
                raise TierChartError(f"{path}: bad row at line {lineno}: {exc}") from exc
            rows.setdefault(size, {})
            if rank in rows[size]:
                raise TierChartError(f"{path}: duplicate rank {rank} for pool size {size}")
            rows[size][rank] = (tier, mins)
    columns = {}
    for size, by_rank in rows.items():
        if sorted(by_rank) != list(range(1, size + 1)):
            raise TierChartError(f"{path}: pool size {size} is missing ranks")
        columns[size] = [by_rank[r] for r in range(1, size + 1)]
    return TierChart(columns=columns)


def save_tier_chart(chart: TierChart, path: str | Path) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["pool_size", "seniority_rank", "tier", "min_shifts"])
        for size in sorted(chart.columns):
            for rank, (tier, mins) in enumerate(chart.columns[size], start=1):
                writer.writerow([size, rank, tier, mins])


def assign_minimums(
    pool_size: int,
    blocks: int,
    chart: TierChart | None = None,
    overrides: list[int] | None = None,
) -> np.ndarray:
    """Per-nurse per-block minimum shift grid g, shape (pool_size, blocks).

    The minimum is identical across blocks for each nurse.  ``overrides``
    supplies per-rank minimums directly when the chart lacks a column.
    """
    if overrides is not None:
        if len(overrides) != pool_size:
            raise TierChartError(f"expected {pool_size} override minimums, got {len(overrides)}")
        mins = list(overrides)
        if any(b > a for a, b in zip(mins, mins[1:])):
            raise TierChartError("override minimums must be non-increasing in rank")
    else:
        chart = chart or TierChart()
        mins = [chart.lookup(pool_size, rank)[1] for rank in range(1, pool_size + 1)]
    return np.tile(np.asarray(mins, dtype=np.int64)[:, None], (1, blocks))
