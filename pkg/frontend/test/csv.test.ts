import * as fs from "fs";
import * as os from "os";
import * as path from "path";

import { describe, expect, it } from "vitest";

import {
  loadInitMetrics,
  loadLinearCurve,
  loadPerOrder,
  loadResults,
  SchemaError,
} from "../src/csv.js";

const FIXTURES = path.join(__dirname, "fixtures");

function tmpCsv(content: string): string {
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "qrcfig-"));
  const file = path.join(dir, "table.csv");
  fs.writeFileSync(file, content);
  return file;
}

describe("loadPerOrder", () => {
  it("parses a real sweep output", () => {
    const rows = loadPerOrder(path.join(FIXTURES, "ipc", "per_order.csv"));
    expect(rows.length).toBeGreaterThan(0);
    const first = rows[0];
    expect(["lcqa", "qcqa"]).toContain(first.scheme);
    expect(typeof first.total).toBe("number");
    expect(rows.some((r) => r.scheme === "qcqa" && r.n === -1)).toBe(true);
  });

  it("rejects a header that does not match the schema", () => {
    const file = tmpCsv("experiment_id,scheme,n,seed,k,ipc_k,total\nx,lcqa,2,0,1,0.5,0.5\n");
    expect(() => loadPerOrder(file)).toThrow(SchemaError);
  });

  it("rejects ragged rows", () => {
    const file = tmpCsv(
      "experiment_id,scheme,n,seed,init_state,k,ipc_k,total\nx,lcqa,2,0,up,1,0.5\n",
    );
    expect(() => loadPerOrder(file)).toThrow(/fields/);
  });

  it("rejects non-numeric values", () => {
    const file = tmpCsv(
      "experiment_id,scheme,n,seed,init_state,k,ipc_k,total\nx,lcqa,2,0,up,1,abc,0.5\n",
    );
    expect(() => loadPerOrder(file)).toThrow(/non-numeric/);
  });

  it("rejects a missing file", () => {
    expect(() => loadPerOrder("/nonexistent/per_order.csv")).toThrow(/not found/);
  });
});

describe("loadResults", () => {
  it("parses nrmse rows", () => {
    const rows = loadResults(path.join(FIXTURES, "lorenz", "results.csv"));
    const metrics = new Set(rows.map((r) => r.metric));
    expect(metrics.has("nrmse_lxx")).toBe(true);
    expect(metrics.has("nrmse_lxz")).toBe(true);
  });
});

describe("loadLinearCurve", () => {
  it("parses delays and capacities", () => {
    const rows = loadLinearCurve(path.join(FIXTURES, "ipc", "linear_curve.csv"));
    expect(Math.min(...rows.map((r) => r.delay))).toBe(1);
    for (const r of rows) {
      expect(r.c1).toBeGreaterThanOrEqual(0);
      expect(r.c1).toBeLessThanOrEqual(1);
    }
  });
});

describe("loadInitMetrics", () => {
  it("parses the control rows and treats empty ratios as null", () => {
    const rows = loadInitMetrics(path.join(FIXTURES, "init", "init_metrics.csv"));
    const controls = rows.filter((r) => r.initState === "qcqa");
    expect(controls.length).toBeGreaterThan(0);
    for (const c of controls) {
      expect(c.r).toBe(1);
      expect(c.d).toBe(0);
      expect(c.dW).toBe(0);
    }
    const file = tmpCsv("experiment_id,init_state,n,seed,r,d,d_w\nx,up,3,0,,0.1,0.2\n");
    expect(loadInitMetrics(file)[0].r).toBeNull();
  });
});
