/** Editable clause grid: every cell is an input, rows can be added and
 * deleted, and violations of the table invariants are shown inline. */

import { COLUMNS, Row, RowError, emptyRow, nextTopLevelId, validateRows } from "./table.js";

export class Grid {
  private rows: Row[] = [];
  private onChange: () => void;
  private table: HTMLTableElement;
  private errorBox: HTMLElement;

  constructor(root: HTMLElement, onChange: () => void) {
    this.onChange = onChange;
    this.table = document.createElement("table");
    this.table.className = "clause-grid";
    this.errorBox = document.createElement("div");
    this.errorBox.className = "grid-errors";
    const addButton = document.createElement("button");
    addButton.id = "add-row";
    addButton.textContent = "Add row";
    addButton.addEventListener("click", () => {
      this.rows.push(emptyRow(nextTopLevelId(this.rows)));
      this.render();
      this.onChange();
    });
    root.append(this.table, addButton, this.errorBox);
    this.render();
  }

  getRows(): Row[] {
    return this.rows.map((row) => ({ ...row }));
  }

  setRows(rows: Row[]): void {
    this.rows = rows.map((row) => ({ ...row }));
    this.render();
    this.onChange();
  }

  errors(): RowError[] {
    return validateRows(this.rows);
  }

  /** Flag a server-reported problem on the row named by `location`. */
  flagRow(location: string | null, message: string): void {
    this.errorBox.textContent = location ? `row ${location}: ${message}` : message;
    if (location === null) return;
    for (const tr of this.table.querySelectorAll("tr[data-row-id]")) {
      if ((tr as HTMLElement).dataset.rowId === location) {
        tr.classList.add("row-error");
      }
    }
  }

  private render(): void {
    const errors = validateRows(this.rows);
    this.table.replaceChildren();
    const head = this.table.insertRow();
    for (const column of COLUMNS) {
      const th = document.createElement("th");
      th.textContent = column;
      head.append(th);
    }
    head.append(document.createElement("th"));

    this.rows.forEach((row, rowIndex) => {
      const tr = this.table.insertRow();
      tr.dataset.rowId = row.id;
      const rowErrors = errors.filter((e) => e.rowIndex === rowIndex);
      if (rowErrors.length > 0) tr.classList.add("row-error");
      for (const column of COLUMNS) {
        const td = tr.insertCell();
        const input = document.createElement("input");
        input.value = row[column];
        input.dataset.column = column;
        input.title = rowErrors.find((e) => e.column === column)?.message ?? "";
        if (rowErrors.some((e) => e.column === column)) input.classList.add("cell-error");
        input.addEventListener("input", () => {
          this.rows[rowIndex][column] = input.value;
          this.refreshErrors();
          this.onChange();
        });
        td.append(input);
      }
      const actions = tr.insertCell();
      const remove = document.createElement("button");
      remove.textContent = "delete";
      remove.className = "delete-row";
      remove.addEventListener("click", () => {
        this.rows.splice(rowIndex, 1);
        this.render();
        this.onChange();
      });
      actions.append(remove);
    });
    this.refreshErrors();
  }

  private refreshErrors(): void {
    const errors = validateRows(this.rows);
    this.errorBox.textContent = errors
      .map((e) => `row ${this.rows[e.rowIndex]?.id || e.rowIndex + 1}: ${e.message}`)
      .join(" | ");
  }
}
