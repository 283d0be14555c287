import { describe, expect, it } from "vitest";

import { CODE_TOOLTIPS, describeCodes, isCompactCode } from "../src/codes.js";

describe("code tooltips", () => {
  it("covers all four blocking codes", () => {
    expect(Object.keys(CODE_TOOLTIPS).sort()).toEqual(["B", "D", "M", "W"]);
  });

  it("expands a compact cell code in canonical order", () => {
    const lines = describeCodes("BW");
    expect(lines).toHaveLength(2);
    expect(lines[0]).toMatch(/^B: .*back-to-back/);
    expect(lines[1]).toMatch(/^W: .*weekend/);
  });

  it("names demand and shift-maximum blocks", () => {
    expect(describeCodes("D")[0]).toMatch(/demand/);
    expect(describeCodes("M")[0]).toMatch(/maximum number of shifts/);
  });

  it("returns nothing for assigned or unavailable markers", () => {
    expect(describeCodes("X")).toEqual([]);
    expect(describeCodes(".")).toEqual([]);
  });

  it("validates compact codes strictly", () => {
    for (const good of ["", "B", "BD", "BDMW", "DW", "MW"]) {
      expect(isCompactCode(good), good).toBe(true);
    }
    for (const bad of ["WB", "BB", "Q", "BX"]) {
      expect(isCompactCode(bad), bad).toBe(false);
    }
  });
});
