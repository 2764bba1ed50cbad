/** Query panel: the template list with slot dropdowns filled from the
 * model, a run button per query, and the result shown beside it. */

import * as api from "./api.js";

export class QueryPanel {
  private root: HTMLElement;
  private coml = "";

  constructor(root: HTMLElement) {
    this.root = root;
  }

  /** Rebuild the panel for a freshly converted model. */
  async refresh(coml: string): Promise<void> {
    this.coml = coml;
    this.root.replaceChildren();
    const templates = await api.listTemplates();
    for (const template of templates) {
      const slots = await api.completions(coml, template.id);
      this.root.append(this.renderQuery(template, slots));
    }
  }

  private renderQuery(
    template: api.QueryTemplate, slots: Record<string, string[]>,
  ): HTMLElement {
    const item = document.createElement("div");
    item.className = "query";
    item.dataset.templateId = String(template.id);

    const sentence = document.createElement("span");
    sentence.className = "query-sentence";
    const controls = new Map<string, HTMLInputElement | HTMLSelectElement>();
    let rest = template.sentence;
    for (const slot of template.slots) {
      const marker = `{${slot.name}}`;
      const at = rest.indexOf(marker);
      sentence.append(rest.slice(0, at));
      if (slot.kind === "number") {
        const input = document.createElement("input");
        input.type = "number";
        input.min = "0";
        input.className = `slot slot-${slot.name}`;
        controls.set(slot.name, input);
        sentence.append(input);
      } else {
        const select = document.createElement("select");
        select.className = `slot slot-${slot.name}`;
        for (const value of slots[slot.name] ?? []) {
          const option = document.createElement("option");
          option.value = value;
          option.textContent = value;
          select.append(option);
        }
        controls.set(slot.name, select);
        sentence.append(select);
      }
      rest = rest.slice(at + marker.length);
    }
    sentence.append(rest);

    const run = document.createElement("button");
    run.textContent = "Run";
    run.className = "run-query";

    const result = document.createElement("div");
    result.className = "query-result";

    run.addEventListener("click", async () => {
      const bindings: Record<string, string> = {};
      for (const [name, control] of controls) bindings[name] = control.value;
      result.textContent = template.kind === "semantic" ? "checking…" : "…";
      result.classList.remove("result-error");
      try {
        if (template.kind === "syntactic") {
          const payload = await api.runSyntactic(this.coml, template.id, bindings);
          result.textContent = payload.answer;
        } else {
          const payload = await api.runSemantic(this.coml, template.id, bindings);
          const lines = [payload.outcome === "Satisfied" ? "Satisfied" : "NOT Satisfied"];
          for (const step of payload.trace ?? []) {
            lines.push(`- ${step.agent} ${step.action} at time ${step.time}`);
          }
          result.textContent = lines.join("\n");
        }
      } catch (error) {
        result.classList.add("result-error");
        if (error instanceof api.ApiError && error.detail.code === "STATE_LIMIT") {
          result.textContent = "model too large to check exhaustively";
        } else {
          result.textContent = String(error instanceof Error ? error.message : error);
          this.highlightSlot(controls, error);
        }
      }
    });

    item.append(sentence, run, result);
    return item;
  }

  private highlightSlot(
    controls: Map<string, HTMLInputElement | HTMLSelectElement>, error: unknown,
  ): void {
    if (!(error instanceof api.ApiError)) return;
    const slot = {
      UNKNOWN_AGENT: "agent",
      UNKNOWN_ACTION: "action",
      UNKNOWN_CLAUSE: "clause",
      BAD_NUMBER: "number",
      MISSING_BINDING: null,
    }[error.detail.code as string];
    if (slot && controls.has(slot)) controls.get(slot)!.classList.add("cell-error");
  }
}
