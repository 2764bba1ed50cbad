import { describe, expect, it } from "vitest";

import {
  COLUMNS,
  emitTsv,
  emptyRow,
  nextTopLevelId,
  parseTsv,
  postEditedText,
  validateRows,
} from "../src/table.js";

function row(id: string, patch: Partial<Record<(typeof COLUMNS)[number], string>> = {}) {
  return { ...emptyRow(id), ...patch };
}

describe("tsv round-trip", () => {
  it("preserves cells with tabs, newlines and backslashes", () => {
    const rows = [row("1", { text: "a\tb\nc\\d", modality: "D" })];
    expect(parseTsv(emitTsv(rows))).toEqual(rows);
  });

  it("rejects unknown headers", () => {
    expect(() => parseTsv("id\tagent\n")).toThrow(/header/);
  });

  it("emits the canonical header", () => {
    expect(emitTsv([]).trimEnd()).toBe(COLUMNS.join("\t"));
  });
});

describe("validation", () => {
  it("accepts a clean table", () => {
    expect(validateRows([row("1", { modality: "O" }), row("2")])).toEqual([]);
  });

  it("flags duplicate ids", () => {
    const errors = validateRows([row("3"), row("3")]);
    expect(errors.some((e) => e.message.includes("DUPLICATE_ID"))).toBe(true);
  });

  it("flags orphan sub-rows", () => {
    const errors = validateRows([row("4.1")]);
    expect(errors.some((e) => e.message.includes("ORPHAN_SUBROW"))).toBe(true);
  });

  it("requires consecutive sub-row numbering", () => {
    const good = [row("2"), row("2.1"), row("2.2")];
    expect(validateRows(good)).toEqual([]);
    const bad = [row("2"), row("2.2")];
    expect(validateRows(bad).length).toBe(1);
  });

  it("flags bad modalities and connectives", () => {
    const errors = validateRows([row("1", { modality: "X", connective: "XOR" })]);
    expect(errors.map((e) => e.column).sort()).toEqual(["connective", "modality"]);
  });
});

describe("helpers", () => {
  it("reconstructs post-edited text from top-level rows", () => {
    const rows = [
      row("1", { text: "Pay up." }),
      row("1.1", { text: "ignored sub-row text" }),
      row("2", { text: "Then leave." }),
    ];
    expect(postEditedText(rows)).toBe("Pay up.\nThen leave.");
  });

  it("picks the next free top-level id", () => {
    expect(nextTopLevelId([row("1"), row("7"), row("7.1")])).toBe("8");
    expect(nextTopLevelId([])).toBe("1");
  });
});
