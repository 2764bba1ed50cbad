/** Start a live analysis service for the integration tests. */

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export const BASE = "http://127.0.0.1:5447";

let server: ChildProcess;

export async function setup(): Promise<void> {
  const store = mkdtempSync(join(tmpdir(), "norma-ui-store-"));
  server = spawn(
    "python3",
    ["-m", "norma.cli", "serve", "--addr", "127.0.0.1:5447", "--store", store],
    { stdio: "ignore" },
  );
  const deadline = Date.now() + 20000;
  for (;;) {
    try {
      const response = await fetch(`${BASE}/queries`);
      if (response.ok) return;
    } catch {
      /* not up yet */
    }
    if (Date.now() > deadline) throw new Error("service did not start");
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
}

export async function teardown(): Promise<void> {
  server?.kill();
}
