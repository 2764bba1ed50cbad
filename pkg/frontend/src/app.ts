/** The post-edit/query loop: paste text, fix the extracted clause grid,
 * convert, read the three model views, run queries. The server is the
 * single source of truth; the browser only edits the grid. */

import * as api from "./api.js";
import { Grid } from "./grid.js";
import { QueryPanel } from "./queries.js";
import { emitTsv, parseTsv, postEditedText } from "./table.js";

export interface EditorSession {
  modelId: string;
  lastConvertedComl: string;
}

export class App {
  private grid: Grid;
  private queryPanel: QueryPanel;
  private session: EditorSession = { modelId: "", lastConvertedComl: "" };

  private el<T extends HTMLElement>(id: string): T {
    const node = document.getElementById(id);
    if (!node) throw new Error(`missing element #${id}`);
    return node as T;
  }

  constructor() {
    this.grid = new Grid(this.el("grid-root"), () => this.onGridChange());
    this.queryPanel = new QueryPanel(this.el("query-list"));

    this.el("extract-btn").addEventListener("click", () => this.extract());
    this.el("convert-btn").addEventListener("click", () => this.convert());
    this.el("save-btn").addEventListener("click", () => this.save());
    this.el("load-btn").addEventListener("click", () => this.load());
  }

  private onGridChange(): void {
    const convert = this.el<HTMLButtonElement>("convert-btn");
    convert.disabled = this.grid.errors().length > 0;
  }

  private setStatus(text: string, isError = false): void {
    const status = this.el("status");
    status.textContent = text;
    status.classList.toggle("status-error", isError);
  }

  async extract(): Promise<void> {
    const text = this.el<HTMLTextAreaElement>("text-input").value;
    this.setStatus("extracting…");
    try {
      const tsv = await api.extractTsv(text);
      this.grid.setRows(parseTsv(tsv));
      this.setStatus("extracted; post-edit the table, then convert");
    } catch (error) {
      this.setStatus(String(error instanceof Error ? error.message : error), true);
    }
  }

  async convert(): Promise<void> {
    if (this.grid.errors().length > 0) return;
    this.setStatus("converting…");
    try {
      const coml = await api.tsvToComl(emitTsv(this.grid.getRows()));
      this.session.lastConvertedComl = coml;
      await this.renderViews(coml);
      this.setStatus("model ready");
    } catch (error) {
      if (error instanceof api.ApiError) {
        this.grid.flagRow(error.detail.location, error.detail.message);
        this.setStatus(`${error.detail.code}: ${error.detail.message}`, true);
      } else {
        this.setStatus(String(error), true);
      }
    }
  }

  private async renderViews(coml: string): Promise<void> {
    this.el("pane-text").textContent = postEditedText(this.grid.getRows());
    const [cnl, codsh] = await Promise.all([
      api.comlToCnl(coml),
      api.comlToCodsh(coml),
    ]);
    this.el("pane-cnl").textContent = cnl.text;
    this.el("cnl-misses").textContent = cnl.misses.length
      ? `missing from lexicon: ${cnl.misses.join(", ")}`
      : "";
    this.el("pane-codsh").textContent = codsh;
    await this.queryPanel.refresh(coml);
  }

  async save(): Promise<void> {
    const id = this.el<HTMLInputElement>("model-id").value.trim();
    if (!id || !this.session.lastConvertedComl) {
      this.setStatus("convert first and give the model a name", true);
      return;
    }
    try {
      await api.saveModel(id, this.session.lastConvertedComl);
      this.session.modelId = id;
      this.setStatus(`saved as ${id}`);
    } catch (error) {
      this.setStatus(String(error instanceof Error ? error.message : error), true);
    }
  }

  async load(): Promise<void> {
    const id = this.el<HTMLInputElement>("model-id").value.trim();
    try {
      const coml = await api.loadModel(id);
      this.session = { modelId: id, lastConvertedComl: coml };
      this.grid.setRows(parseTsv(await api.comlToTsv(coml)));
      await this.renderViews(coml);
      this.setStatus(`loaded ${id}`);
    } catch (error) {
      this.setStatus(String(error instanceof Error ? error.message : error), true);
    }
  }
}
