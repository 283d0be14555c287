/** Client-side mirror of the rendered schedule grid.
 *
 * Parses the service's schedule CSV into a structured model, tracks
 * manual what-if edits as a dirty set, and serializes back to the same
 * CSV for re-verification.  No feasibility logic lives here: codes and
 * verdicts always come from the service; the only client-side
 * arithmetic is display bookkeeping (assigned counts, deltas, unfilled
 * = demand − assigned).
 */

import { isCompactCode } from "./codes.js";
import type { VerificationReport } from "./api.js";

export interface BlockSection {
  /** Column labels like "d4s1*"; a trailing * marks a weekend shift. */
  shiftLabels: string[];
  /** cells[nurseIndex][shiftIndex]: "X", "." (unavailable), or a code string. */
  cells: string[][];
  demand: number[];
  unfilled: number[];
  /** Mean preference of assignees per shift; null when nothing assigned. */
  avgPreference: Array<number | null>;
}

export interface TotalsRow {
  nurseId: string;
  block: number; // 1-based
  assigned: number;
  minimum: number;
  delta: number;
}

export interface ScheduleGrid {
  nurseIds: string[];
  blocks: BlockSection[];
  totals: TotalsRow[];
}

export class GridParseError extends Error {}

function splitCsvLine(line: string): string[] {
  return line.split(",");
}

/** Parse a render_schedule export into a structured grid. */
export function parseScheduleGrid(text: string): ScheduleGrid {
  const lines = text.replace(/\r\n/g, "\n").split("\n");
  const blocks: BlockSection[] = [];
  let nurseIds: string[] = [];
  let pos = 0;

  while (pos < lines.length && lines[pos]!.startsWith("block ")) {
    const header = splitCsvLine(lines[pos]!);
    const shiftLabels = header.slice(1);
    pos += 1;

    const cells: string[][] = [];
    const ids: string[] = [];
    while (pos < lines.length) {
      const row = splitCsvLine(lines[pos]!);
      if (row[0] === "demand") break;
      if (row.length !== shiftLabels.length + 1) {
        throw new GridParseError(`row ${pos + 1}: expected ${shiftLabels.length + 1} columns, got ${row.length}`);
      }
      ids.push(row[0]!);
      cells.push(row.slice(1));
      pos += 1;
    }
    if (pos >= lines.length) throw new GridParseError("missing demand row");
    if (blocks.length === 0) nurseIds = ids;
    else if (ids.join() !== nurseIds.join()) {
      throw new GridParseError("nurse rows differ between blocks");
    }

    const demand = splitCsvLine(lines[pos]!).slice(1).map(Number);
    pos += 1;
    const unfilledRow = splitCsvLine(lines[pos] ?? "");
    if (unfilledRow[0] !== "unfilled") throw new GridParseError(`line ${pos + 1}: expected unfilled row`);
    const unfilled = unfilledRow.slice(1).map(Number);
    pos += 1;
    const prefRow = splitCsvLine(lines[pos] ?? "");
    if (prefRow[0] !== "avg_preference") throw new GridParseError(`line ${pos + 1}: expected avg_preference row`);
    const avgPreference = prefRow.slice(1).map((v) => (v === "" ? null : Number(v)));
    pos += 1;
    if ((lines[pos] ?? "") !== "") throw new GridParseError(`line ${pos + 1}: expected blank separator`);
    pos += 1;

    for (const row of cells) {
      for (const cell of row) {
        if (cell !== "X" && cell !== "." && cell !== "" && !isCompactCode(cell)) {
          throw new GridParseError(`unrecognized cell value ${JSON.stringify(cell)}`);
        }
      }
    }
    blocks.push({ shiftLabels, cells, demand, unfilled, avgPreference });
  }
  if (blocks.length === 0) throw new GridParseError("no block sections found");

  const totalsHeader = splitCsvLine(lines[pos] ?? "");
  if (totalsHeader.join(",") !== "nurse,block,assigned,minimum,delta") {
    throw new GridParseError(`line ${pos + 1}: expected totals table header`);
  }
  pos += 1;
  const totals: TotalsRow[] = [];
  while (pos < lines.length && lines[pos] !== "") {
    const row = splitCsvLine(lines[pos]!);
    if (row.length !== 5) throw new GridParseError(`line ${pos + 1}: malformed totals row`);
    totals.push({
      nurseId: row[0]!,
      block: Number(row[1]),
      assigned: Number(row[2]),
      minimum: Number(row[3]),
      delta: Number(row[4]),
    });
    pos += 1;
  }
  return { nurseIds, blocks, totals };
}

export interface CellRef {
  block: number; // 0-based
  nurse: number; // 0-based row index
  shift: number; // 0-based column index
}

const keyOf = (ref: CellRef) => `${ref.block}:${ref.nurse}:${ref.shift}`;

/** Editable view over a parsed grid with dirty-edit tracking. */
export class GridViewModel {
  readonly grid: ScheduleGrid;
  private readonly dirty = new Set<string>();
  verdict: string | null = null;
  lastReport: VerificationReport | null = null;

  constructor(grid: ScheduleGrid, report?: VerificationReport) {
    this.grid = grid;
    if (report) {
      this.verdict = report.verdict;
      this.lastReport = report;
    }
  }

  cell(ref: CellRef): string {
    const value = this.grid.blocks[ref.block]?.cells[ref.nurse]?.[ref.shift];
    if (value === undefined) throw new RangeError(`no cell at ${keyOf(ref)}`);
    return value;
  }

  isAssigned(ref: CellRef): boolean {
    return this.cell(ref) === "X";
  }

  get isDirty(): boolean {
    return this.dirty.size > 0;
  }

  dirtyCells(): CellRef[] {
    return [...this.dirty].map((k) => {
      const [block, nurse, shift] = k.split(":").map(Number);
      return { block: block!, nurse: nurse!, shift: shift! };
    });
  }

  /**
   * Manually assign or unassign a cell.  The grid goes dirty (stale
   * verdict) until a verify round-trip returns.  Unassigning leaves an
   * empty cell; the service's next report supplies the real code.
   */
  setAssigned(ref: CellRef, assigned: boolean): void {
    const block = this.grid.blocks[ref.block];
    if (!block) throw new RangeError(`no block ${ref.block}`);
    const row = block.cells[ref.nurse];
    if (!row || ref.shift >= row.length) throw new RangeError(`no cell at ${keyOf(ref)}`);
    const before = row[ref.shift]!;
    if (before === "." && assigned) {
      throw new RangeError(`nurse ${this.grid.nurseIds[ref.nurse]} is unavailable at ${keyOf(ref)}`);
    }
    const after = assigned ? "X" : before === "X" ? "" : before;
    if (after === before) return;
    row[ref.shift] = after;
    this.dirty.add(keyOf(ref));
    this.verdict = null; // stale until re-verified
    this.recomputeFooter(ref.block);
  }

  /** Display bookkeeping only: unfilled = demand − assigned count. */
  private recomputeFooter(blockIdx: number): void {
    const block = this.grid.blocks[blockIdx]!;
    for (let j = 0; j < block.demand.length; j++) {
      let assigned = 0;
      for (const row of block.cells) if (row[j] === "X") assigned += 1;
      block.unfilled[j] = block.demand[j]! - assigned;
    }
    for (const t of this.grid.totals) {
      if (t.block !== blockIdx + 1) continue;
      const row = block.cells[this.grid.nurseIds.indexOf(t.nurseId)]!;
      t.assigned = row.filter((c) => c === "X").length;
      t.delta = t.assigned - t.minimum;
    }
  }

  /** Serialize back to the service CSV format for re-verification. */
  toCsv(): string {
    const out: string[] = [];
    this.grid.blocks.forEach((block, k) => {
      out.push(["block " + (k + 1), ...block.shiftLabels].join(","));
      block.cells.forEach((row, i) => out.push([this.grid.nurseIds[i]!, ...row].join(",")));
      out.push(["demand", ...block.demand].join(","));
      out.push(["unfilled", ...block.unfilled].join(","));
      out.push(
        ["avg_preference", ...block.avgPreference.map((v) => (v === null ? "" : v.toFixed(2)))].join(","),
      );
      out.push("");
    });
    out.push("nurse,block,assigned,minimum,delta");
    for (const t of this.grid.totals) {
      out.push([t.nurseId, t.block, t.assigned, t.minimum, t.delta].join(","));
    }
    return out.join("\n") + "\n";
  }

  /** A verify round-trip settles the view: dirty set clears and the
   * service's verdict becomes current. */
  applyVerification(report: VerificationReport): void {
    this.lastReport = report;
    this.verdict = report.verdict;
    this.dirty.clear();
    // Refresh code cells from the authoritative grid.
    const codes = (report as { code_grid?: { codes?: Record<string, string> } }).code_grid?.codes;
    if (!codes) return;
    this.grid.blocks.forEach((block, k) => {
      block.cells.forEach((row, i) => {
        for (let j = 0; j < row.length; j++) {
          if (row[j] === "X" || row[j] === ".") continue;
          row[j] = codes[`${i},${j},${k}`] ?? "";
        }
      });
    });
  }
}
