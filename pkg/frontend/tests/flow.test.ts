/**
 * Scripted end-to-end flow against a real registry server.
 *
 * The test seeds the demo dataset, spawns `python -m semreg serve`, drives
 * the guided-search controller through the discovery narrative (pick the
 * Localization class, then hunt for a laser-scanner wrapper with an update
 * frequency of at least 30 Hz that measures reflectance, then add the
 * manufacturer filter), and checks the final one-element candidate set
 * against the CLI's answer for the equivalent expression.
 */

import { ChildProcess, spawn, spawnSync } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { CandidateRow, CompatibilityInspector, GuidedSearch, InspectorView, SearchView } from "../src/controller.js";
import { assembleExpression } from "../src/query.js";

const PYTHON = process.env.SEMREG_PYTHON ?? "python3";
const PORT = 18000 + (process.pid % 2000);
const BASE = `http://127.0.0.1:${PORT}`;

let workDir: string;
let server: ChildProcess;
let ontologyArgs: string[] = [];

class RecordingView implements SearchView {
  lastExpression = "";
  lastRows: CandidateRow[] = [];
  lastTotal = 0;
  errors: string[] = [];

  renderExpression(expression: string): void {
    this.lastExpression = expression;
  }

  renderResults(rows: CandidateRow[], total: number): void {
    this.lastRows = rows;
    this.lastTotal = total;
  }

  renderError(message: string): void {
    this.errors.push(message);
  }

  ids(): string[] {
    return this.lastRows.map((row) => row.record.id);
  }
}

class RecordingInspector implements InspectorView {
  report: import("../src/api.js").CompatibilityReport | null = null;
  emptyState = "";

  renderReport(report: import("../src/api.js").CompatibilityReport): void {
    this.report = report;
  }

  renderEmptyState(message: string): void {
    this.emptyState = message;
  }
}

async function waitForServer(): Promise<void> {
  const deadline = Date.now() + 30_000;
  let lastError: unknown = null;
  while (Date.now() < deadline) {
    if (server.exitCode !== null) {
      throw new Error(`server exited with code ${server.exitCode}`);
    }
    try {
      const response = await fetch(`${BASE}/api/taxonomy/software`);
      if (response.ok) return;
    } catch (error) {
      lastError = error;
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error(`server never became ready: ${lastError}`);
}

beforeAll(async () => {
  workDir = mkdtempSync(join(tmpdir(), "semreg-ui-"));
  const init = spawnSync(PYTHON, ["-m", "semreg", "demo", "init", workDir], { encoding: "utf-8" });
  if (init.status !== 0) {
    throw new Error(`demo init failed: ${init.stderr}`);
  }
  ontologyArgs = ["hardware", "software", "capability"].flatMap((name) => [
    "-o",
    join(workDir, "ontologies", `${name}.rdsl`),
  ]);
  server = spawn(
    PYTHON,
    ["-m", "semreg", "serve", "--store", join(workDir, "store"), "--bind", `127.0.0.1:${PORT}`, ...ontologyArgs],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  await waitForServer();
}, 60_000);

afterAll(() => {
  server?.kill();
  if (workDir) rmSync(workDir, { recursive: true, force: true });
});

function cliQuery(expression: string, extra: string[] = []): string[] {
  const result = spawnSync(
    PYTHON,
    [
      "-m",
      "semreg",
      "query",
      join(workDir, "ontologies", "hardware.rdsl"),
      join(workDir, "ontologies", "software.rdsl"),
      join(workDir, "ontologies", "capability.rdsl"),
      "--store",
      join(workDir, "store"),
      "--expr",
      expression,
      "--format",
      "json",
      ...extra,
    ],
    { encoding: "utf-8" },
  );
  if (result.status !== 0) {
    throw new Error(`cli query failed: ${result.stderr}`);
  }
  const payload = JSON.parse(result.stdout) as { results: { id: string }[] };
  return payload.results.map((r) => r.id);
}

describe("guided discovery against the live server", () => {
  it("reproduces the narrowing narrative and matches the CLI", async () => {
    const view = new RecordingView();
    const search = new GuidedSearch(new ApiClient(BASE), view);

    // Step 0: nothing selected -> the full released listing.
    await search.refresh();
    expect(view.lastRows.length).toBeGreaterThan(10);
    expect(view.lastRows.every((row) => row.record.meta.status === "Released")).toBe(true);

    // Step 1: the integrator looks for localization software.
    await search.toggleConcept({ ontology: "software", name: "Localization" });
    expect(view.ids()).toContain("sw_agv_localization");
    expect(view.ids()).toEqual(cliQuery("Localization"));

    // Step 2: the chosen component needs a laser-scanner wrapper; restrict
    // to hardware-access components over laser scanners.
    await search.clear();
    await search.toggleConcept({ ontology: "kind", name: "HAComponent" });
    await search.toggleConcept({ ontology: "hardware", name: "LaserScanner" });
    expect(view.ids()).toHaveLength(5);

    // Step 3: demand an update frequency of at least 30 Hz plus measured
    // reflectance; the set shrinks to the two conforming wrappers.
    await search.addClause({ attribute: "UpdateFrequencyInHz", op: ">=", value: "30" });
    await search.addClause({ attribute: "MeasuredReflectance", op: "present" });
    expect(view.ids()).toEqual(["ha_laser_acme", "ha_laser_borealis"]);

    // Step 4: the integrator has specific hardware in mind.
    await search.setManufacturer("Acme");
    expect(view.ids()).toEqual(["ha_laser_acme"]);

    // The CLI answers the equivalent expression identically.
    const expression = assembleExpression(search.draft);
    expect(view.lastExpression).toBe(expression);
    expect(cliQuery(expression, ["--manufacturer", "Acme"])).toEqual(["ha_laser_acme"]);
    expect(view.errors).toEqual([]);
  }, 30_000);

  it("shows per-requirement breakdowns when a requirer is selected", async () => {
    const view = new RecordingView();
    const search = new GuidedSearch(new ApiClient(BASE), view);
    await search.setRequirer("sw_agv_localization");
    await search.toggleConcept({ ontology: "kind", name: "HAComponent" });
    await search.toggleConcept({ ontology: "hardware", name: "LaserScanner" });
    const byId = new Map(view.lastRows.map((row) => [row.record.id, row]));
    expect(byId.get("ha_laser_acme")?.report?.compatible).toBe(true);
    expect(byId.get("ha_laser_helix")?.report?.compatible).toBe(false);
  }, 30_000);
});

describe("compatibility inspector against the live server", () => {
  it("renders an all-pass table for a conforming pair", async () => {
    const inspectorView = new RecordingInspector();
    const inspector = new CompatibilityInspector(new ApiClient(BASE), inspectorView);
    await inspector.inspect("sw_ravision", "ha_rgbd_tiefsee");
    expect(inspectorView.report?.compatible).toBe(true);
    expect(inspectorView.report?.checks.every((c) => c.verdict === "Pass")).toBe(true);
  });

  it("flags the slow camera wrapper on the FPS row", async () => {
    const inspectorView = new RecordingInspector();
    const inspector = new CompatibilityInspector(new ApiClient(BASE), inspectorView);
    await inspector.inspect("sw_ravision", "ha_rgbd_helix");
    expect(inspectorView.report?.compatible).toBe(false);
    const failing = inspectorView.report?.checks.filter((c) => c.verdict !== "Pass") ?? [];
    expect(failing.some((c) => c.constraint.includes("FPS"))).toBe(true);
  });

  it("is vacuously compatible for a component against itself", async () => {
    const inspectorView = new RecordingInspector();
    const inspector = new CompatibilityInspector(new ApiClient(BASE), inspectorView);
    await inspector.inspect("sw_grid_mapping", "sw_grid_mapping");
    expect(inspectorView.report?.compatible).toBe(true);
    expect(inspectorView.report?.checks ?? []).toHaveLength(0);
  });

  it("renders an empty state for unknown ids", async () => {
    const inspectorView = new RecordingInspector();
    const inspector = new CompatibilityInspector(new ApiClient(BASE), inspectorView);
    await inspector.inspect("ghost", "sw_ravision");
    expect(inspectorView.emptyState).toContain("ghost");
  });
});
