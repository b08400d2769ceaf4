/** End-to-end scenarios against a real fixture-loaded server.
 *
 * The suite boots the Python HTTP service with the feed demo fixture, then
 * checks: (1) the news panel renders the demo feed result, (2) tagging a new
 * user into the concept changes the next feed (the new seed is reachable),
 * (3) navigating resource A → B in one session leaves a usage record on the
 * server.
 */

import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { renderNews } from "../src/render.js";

const PORT = 8947;
const BASE = `http://127.0.0.1:${PORT}`;
const SW = "urn:scholar:concept:semantic-web";
const FEED_NOW = "2008-07-01T00:00:00Z";

let server: ChildProcess | null = null;
let dataDir: string | null = null;
const client = new ApiClient(BASE);

async function waitForHealth(timeoutMs: number): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  let lastError: unknown = null;
  while (Date.now() < deadline) {
    try {
      const health = await client.health();
      if (health.status === "ok") return;
    } catch (err) {
      lastError = err;
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error(`server did not come up on ${BASE}: ${String(lastError)}`);
}

beforeAll(async () => {
  dataDir = mkdtempSync(join(tmpdir(), "quadwalk-e2e-"));
  const seeded = spawnSync(
    "python3",
    ["-m", "quadwalk.cli", "--data", dataDir, "demo-data", "--fixture", "feed"],
    { encoding: "utf-8" },
  );
  if (seeded.status !== 0) {
    throw new Error(`demo-data failed: ${seeded.stderr}`);
  }
  server = spawn(
    "python3",
    ["-m", "quadwalk.cli", "--data", dataDir, "serve", "--port", String(PORT)],
    { stdio: "ignore" },
  );
  await waitForHealth(20_000);
}, 30_000);

afterAll(() => {
  server?.kill("SIGTERM");
  if (dataDir) rmSync(dataDir, { recursive: true, force: true });
});

describe("news panel", () => {
  it("renders the demo feed: apepe then article1, nothing else", async () => {
    const session = await client.openSession("urn:demo:marko");
    const feed = await client.news(SW, session.sessionId, { now: FEED_NOW });
    expect(feed.entries.map((e) => e.resource.value)).toEqual([
      "urn:demo:apepe",
      "urn:demo:article1",
    ]);
    const html = renderNews(feed);
    const apepe = html.indexOf("urn:demo:apepe");
    const article = html.indexOf("urn:demo:article1");
    expect(apepe).toBeGreaterThan(-1);
    expect(article).toBeGreaterThan(apepe);
    // Scores rendered verbatim from the payload.
    for (const entry of feed.entries) {
      expect(html).toContain(String(entry.score));
    }
  });
});

describe("tagging changes the feed", () => {
  it("a newly tagged user becomes a reachable seed on refresh", async () => {
    const marko = await client.openSession("urn:demo:marko");
    const before = await client.news(SW, marko.sessionId, { now: FEED_NOW });
    const beforeSet = new Set(before.entries.map((e) => e.resource.value));
    expect(beforeSet.has("urn:demo:software1")).toBe(false);

    // The new user tags a resource into the concept, then marko tags the
    // new user — making them a seed whose tags feed marko's next refresh.
    const newcomer = await client.openSession("urn:e2e:newuser");
    await client.tag(newcomer.sessionId, {
      concept: SW,
      resource: "urn:demo:software1",
      weight: 0.8,
    });
    await client.tag(marko.sessionId, {
      concept: SW,
      resource: "urn:e2e:newuser",
      weight: 1.0,
    });

    const after = await client.news(SW, marko.sessionId, { now: FEED_NOW });
    const afterSet = new Set(after.entries.map((e) => e.resource.value));
    expect(afterSet.has("urn:demo:software1")).toBe(true);
    expect(afterSet).not.toEqual(beforeSet);
  });
});

describe("view navigation records usage", () => {
  it("A → B in one session leaves a usage node on the server", async () => {
    const pristine = await client.viewResource("urn:demo:webpage1");
    const blanksBefore = Object.values(pristine.incoming)
      .flat()
      .filter((t) => t.kind === "blank" && t.value.startsWith("use"));
    expect(blanksBefore).toHaveLength(0);

    const session = await client.openSession("urn:demo:marko");
    await client.viewResource("urn:demo:dave", session.sessionId);
    await client.viewResource("urn:demo:webpage1", session.sessionId);

    const viewed = await client.viewResource("urn:demo:webpage1");
    const blanksAfter = Object.values(viewed.incoming)
      .flat()
      .filter((t) => t.kind === "blank" && t.value.startsWith("use"));
    expect(blanksAfter.length).toBeGreaterThan(0);
  });
});
