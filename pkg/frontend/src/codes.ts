/** Blocking-code letters shown in unassigned-but-available cells. */

export type BlockingCode = "B" | "D" | "M" | "W";

/** Tooltip text per code letter, shown on hover in the schedule grid. */
export const CODE_TOOLTIPS: Record<BlockingCode, string> = {
  B: "Cannot be scheduled or else back-to-back shifts would occur",
  D: "Cannot be scheduled because demand is already met by senior nurses",
  M: "Cannot be scheduled because the maximum number of shifts for the block has been reached",
  W: "Cannot be scheduled because the maximum number of weekend shifts has been reached",
};

export const CODE_ORDER: readonly BlockingCode[] = ["B", "D", "M", "W"];

/** Expand a compact cell code like "BW" into its tooltip lines. */
export function describeCodes(cell: string): string[] {
  const out: string[] = [];
  for (const letter of CODE_ORDER) {
    if (cell.includes(letter)) out.push(`${letter}: ${CODE_TOOLTIPS[letter]}`);
  }
  return out;
}

/** True when the string is a valid compact code (subset of BDMW, in order). */
export function isCompactCode(cell: string): boolean {
  let pos = 0;
  for (const ch of cell) {
    const idx = CODE_ORDER.indexOf(ch as BlockingCode, pos);
    if (idx < 0) return false;
    pos = idx + 1;
  }
  return true;
}
