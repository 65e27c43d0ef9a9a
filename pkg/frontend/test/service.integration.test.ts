// End-to-end checks against the real session service: the UI client enters
// the demo replacement coefficients, sees the service's masked difference at
// 4 decimal places, loses a race against a second tab, and commits a bundle
// that is byte-identical to the batch `mask` command.

import { execFileSync, spawn, ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, readdirSync, statSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { Client, StaleRevisionError } from "../src/api.js";
import { fixed4 } from "../src/format.js";
import { TunerModel } from "../src/tuner.js";

const PYTHON = process.env.GROUPMASK_PYTHON ?? "python3";
const PORT = 18000 + Math.floor(Math.random() * 2000);
const BASE = `http://127.0.0.1:${PORT}`;
const COEFFICIENTS = [0.0032, 0.0018, 0.0019, 0.0018, 0.0009];

let scenario: string;
let server: ChildProcess;

async function waitForService(timeoutMs = 30000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/api/state`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error("session service did not come up");
}

function* walk(dir: string): Generator<string> {
  for (const name of readdirSync(dir)) {
    const path = join(dir, name);
    if (statSync(path).isDirectory()) yield* walk(path);
    else yield path;
  }
}

beforeAll(async () => {
  scenario = mkdtempSync(join(tmpdir(), "groupmask-it-"));
  execFileSync(PYTHON, [join(import.meta.dirname, "write_scenario.py"), scenario]);
  server = spawn(
    PYTHON,
    [
      "-m", "groupmask.cli", "serve",
      "--config", join(scenario, "config.json"),
      "--port", String(PORT),
      "--out", join(scenario, "committed"),
    ],
    { stdio: "ignore" },
  );
  await waitForService();
}, 60000);

afterAll(() => {
  server?.kill();
});

describe("tuner against the live service", () => {
  it("shows the service's masked difference at 4 d.p. after entering the demo coefficients", async () => {
    const model = new TunerModel(new Client(BASE), { debounceMs: 0 });
    await model.load();
    expect(model.snapshot().phase).toBe("ready");

    COEFFICIENTS.forEach((value, i) => model.editCoefficient(i, value));
    await model.flush();
    const snapshot = model.snapshot();
    expect(snapshot.phase).toBe("ready");
    expect(snapshot.evaluation!.feasible).toBe(true);

    // what the screen renders is fixed4 of the model's evaluation; it must
    // equal fixed4 of the raw API payload, value for value
    const raw = await (await fetch(`${BASE}/api/state`)).json();
    const onScreen = snapshot.evaluation!.delta_tilde.map(fixed4);
    expect(onScreen).toEqual(raw.delta_tilde.map(fixed4));

    // spot values of the masked demo signal
    expect(onScreen[16]).toBe("0.0021");
    expect(onScreen[0]).toBe("0.0018");
  }, 30000);

  it("rejects a stale-revision commit from a second tab", async () => {
    const tabA = new TunerModel(new Client(BASE), { debounceMs: 0 });
    await tabA.load();
    const staleRevision = tabA.snapshot().revision;

    // tab B advances the session
    const tabB = new TunerModel(new Client(BASE), { debounceMs: 0 });
    await tabB.load();
    tabB.editCoefficient(0, 0.0031);
    await tabB.flush();

    // tab A now tries to commit what it last saw
    await expect(new Client(BASE).commit(staleRevision)).rejects.toThrow(
      StaleRevisionError,
    );
    await expect(tabA.commit()).rejects.toThrow(StaleRevisionError);
    expect(tabA.snapshot().phase).toBe("stale");
    // after the conflict the model has adopted the service's revision
    expect(tabA.snapshot().revision).toBe(tabB.snapshot().revision);
  }, 30000);

  it("commits the same bundle bytes as the batch mask command", async () => {
    const model = new TunerModel(new Client(BASE), { debounceMs: 0 });
    await model.load();
    COEFFICIENTS.forEach((value, i) => model.editCoefficient(i, value));
    model.setAlpha(1.0);
    await model.flush();
    const reply = await model.commit();
    expect(reply.outputs.bundle).toBeTruthy();

    execFileSync(PYTHON, [
      "-m", "groupmask.cli", "mask",
      "--config", join(scenario, "config.json"),
      "--plan", join(scenario, "plan.json"),
      "--out", join(scenario, "batch"),
    ]);

    const committed = join(scenario, "committed");
    const batch = join(scenario, "batch");
    const rel = (root: string, path: string) => path.slice(root.length + 1);
    const committedFiles = [...walk(committed)].map((p) => rel(committed, p)).sort();
    const batchFiles = [...walk(batch)].map((p) => rel(batch, p)).sort();
    expect(committedFiles).toEqual(batchFiles);
    expect(committedFiles.length).toBeGreaterThan(15);
    for (const file of committedFiles) {
      expect(
        readFileSync(join(committed, file)).equals(readFileSync(join(batch, file))),
        `${file} differs between committed and batch bundles`,
      ).toBe(true);
    }
  }, 60000);
});
