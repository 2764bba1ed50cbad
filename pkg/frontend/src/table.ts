/**
 * Clause-table model: the editable grid between extraction and the
 * contract model. Mirrors the server's TSV invariants so problems are
 * flagged while typing; everything heavier stays server-side.
 */

export const COLUMNS = [
  "id", "text", "agent", "modality", "verb", "object",
  "connective", "condition", "time",
] as const;

export type Column = (typeof COLUMNS)[number];

export type Row = Record<Column, string>;

export interface RowError {
  rowIndex: number;
  column: Column;
  message: string;
}

const MODALITIES = new Set(["", "O", "P", "F", "D"]);
const CONNECTIVES = new Set(["", "AND", "OR", "SEQ"]);

export function emptyRow(id = ""): Row {
  const row = {} as Row;
  for (const column of COLUMNS) row[column] = "";
  row.id = id;
  return row;
}

function escapeCell(cell: string): string {
  return cell
    .replaceAll("\\", "\\\\")
    .replaceAll("\t", "\\t")
    .replaceAll("\n", "\\n")
    .replaceAll("\r", "\\r");
}

function unescapeCell(cell: string): string {
  let out = "";
  for (let i = 0; i < cell.length; i++) {
    if (cell[i] === "\\" && i + 1 < cell.length) {
      const next = cell[i + 1];
      out += next === "t" ? "\t" : next === "n" ? "\n" : next === "r" ? "\r"
        : next === "\\" ? "\\" : "\\" + next;
      i++;
    } else {
      out += cell[i];
    }
  }
  return out;
}

export function parseTsv(text: string): Row[] {
  const lines = text.split("\n");
  if (lines[lines.length - 1] === "") lines.pop();
  if (lines.length === 0 || lines[0] !== COLUMNS.join("\t")) {
    throw new Error("unexpected table header");
  }
  return lines.slice(1).map((line) => {
    const cells = line.split("\t").map(unescapeCell);
    const row = emptyRow();
    COLUMNS.forEach((column, i) => {
      row[column] = cells[i] ?? "";
    });
    return row;
  });
}

export function emitTsv(rows: Row[]): string {
  const body = rows.map((row) => COLUMNS.map((c) => escapeCell(row[c])).join("\t"));
  return [COLUMNS.join("\t"), ...body].join("\n") + "\n";
}

/** Validate the grid against the table invariants; empty list = convertible. */
export function validateRows(rows: Row[]): RowError[] {
  const errors: RowError[] = [];
  const seen = new Map<string, number>();
  rows.forEach((row, i) => {
    if (row.id === "") {
      errors.push({ rowIndex: i, column: "id", message: "id must not be empty" });
      return;
    }
    if (seen.has(row.id)) {
      errors.push({ rowIndex: i, column: "id", message: `DUPLICATE_ID: ${row.id}` });
    }
    seen.set(row.id, i);
  });
  const childCount = new Map<string, number>();
  rows.forEach((row, i) => {
    if (!MODALITIES.has(row.modality)) {
      errors.push({ rowIndex: i, column: "modality", message: "modality must be O, P, F or D" });
    }
    if (!CONNECTIVES.has(row.connective)) {
      errors.push({
        rowIndex: i, column: "connective", message: "connective must be AND, OR or SEQ",
      });
    }
    const dot = row.id.lastIndexOf(".");
    if (dot !== -1) {
      const parent = row.id.slice(0, dot);
      const k = row.id.slice(dot + 1);
      if (!seen.has(parent)) {
        errors.push({ rowIndex: i, column: "id", message: `ORPHAN_SUBROW: no row ${parent}` });
        return;
      }
      const expected = (childCount.get(parent) ?? 0) + 1;
      if (!/^\d+$/.test(k) || Number(k) !== expected) {
        errors.push({
          rowIndex: i, column: "id",
          message: `sub-rows of ${parent} must be numbered .1, .2, ... in order`,
        });
      }
      childCount.set(parent, expected);
    }
  });
  return errors;
}

/** Reconstruct the post-edited text: the text column of top-level rows. */
export function postEditedText(rows: Row[]): string {
  return rows
    .filter((row) => !row.id.includes(".") && row.text.trim() !== "")
    .map((row) => row.text.trim())
    .join("\n");
}

export function nextTopLevelId(rows: Row[]): string {
  let max = 0;
  for (const row of rows) {
    if (!row.id.includes(".") && /^\d+$/.test(row.id)) {
      max = Math.max(max, Number(row.id));
    }
  }
  return String(max + 1);
}
