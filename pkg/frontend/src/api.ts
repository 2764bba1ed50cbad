/** Typed wrappers over the analysis service. The UI holds no model
 * logic of its own: every transformation round-trips through here. */

let base = "";

/** Point the client at a server (tests run against a live instance). */
export function setBase(url: string): void {
  base = url.replace(/\/$/, "");
}

export interface ServiceError {
  code: string;
  message: string;
  location: string | null;
}

export class ApiError extends Error {
  constructor(public status: number, public detail: ServiceError) {
    super(`${detail.code}: ${detail.message}`);
  }
}

async function call(path: string, init: RequestInit): Promise<Response> {
  const response = await fetch(base + path, init);
  if (!response.ok) {
    let detail: ServiceError = {
      code: `HTTP_${response.status}`, message: response.statusText, location: null,
    };
    try {
      detail = (await response.json()) as ServiceError;
    } catch {
      /* non-JSON error body */
    }
    throw new ApiError(response.status, detail);
  }
  return response;
}

async function postText(path: string, body: string): Promise<Response> {
  return call(path, {
    method: "POST",
    headers: { "content-type": "text/plain; charset=utf-8" },
    body,
  });
}

export async function extractTsv(text: string): Promise<string> {
  return (await postText("/nl/tsv", text)).text();
}

export async function tsvToComl(tsv: string): Promise<string> {
  return (await postText("/tsv/coml", tsv)).text();
}

export async function comlToTsv(coml: string): Promise<string> {
  return (await postText("/coml/tsv", coml)).text();
}

export async function comlToCodsh(coml: string): Promise<string> {
  return (await postText("/coml/codsh", coml)).text();
}

export interface CnlView {
  text: string;
  misses: string[];
}

export async function comlToCnl(coml: string): Promise<CnlView> {
  const response = await postText("/coml/cnl", coml);
  const header = response.headers.get("X-Lexicon-Misses");
  return {
    text: await response.text(),
    misses: header ? header.split(",") : [],
  };
}

export interface SlotSpec {
  name: string;
  kind: "agent" | "action" | "clause" | "number";
}

export interface QueryTemplate {
  id: number;
  kind: "syntactic" | "semantic";
  sentence: string;
  slots: SlotSpec[];
}

export async function listTemplates(): Promise<QueryTemplate[]> {
  const response = await call("/queries", { method: "GET" });
  return (await response.json()) as QueryTemplate[];
}

export async function completions(
  coml: string, templateId: number,
): Promise<Record<string, string[]>> {
  const response = await call("/coml/completions", {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({ coml, template: templateId }),
  });
  return (await response.json()) as Record<string, string[]>;
}

export interface SyntacticResult {
  matches: string[];
  answer: string;
}

export interface TraceStep {
  agent: string;
  action: string;
  time: number;
}

export interface SemanticResult {
  outcome: "Satisfied" | "NotSatisfied";
  trace: TraceStep[] | null;
}

async function postQuery(path: string, coml: string, templateId: number,
                         bindings: Record<string, string>): Promise<Response> {
  return call(path, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({ coml, query: { template: templateId, bindings } }),
  });
}

export async function runSyntactic(
  coml: string, templateId: number, bindings: Record<string, string>,
): Promise<SyntacticResult> {
  const response = await postQuery("/coml/syntactic", coml, templateId, bindings);
  return (await response.json()) as SyntacticResult;
}

export async function runSemantic(
  coml: string, templateId: number, bindings: Record<string, string>,
): Promise<SemanticResult> {
  const response = await postQuery("/coml/semantic", coml, templateId, bindings);
  return (await response.json()) as SemanticResult;
}

export async function saveModel(id: string, coml: string): Promise<void> {
  await call(`/models/${encodeURIComponent(id)}`, {
    method: "PUT",
    headers: { "content-type": "application/xml" },
    body: coml,
  });
}

export async function loadModel(id: string): Promise<string> {
  const response = await call(`/models/${encodeURIComponent(id)}`, { method: "GET" });
  return response.text();
}
