/**
 * Strict loading of the sweep CSVs. Each file kind has a documented header;
 * anything else is rejected so stale or foreign files never render silently.
 */

import * as fs from "fs";
import Papa from "papaparse";

export class SchemaError extends Error {}

export const HEADERS = {
  results: [
    "experiment_id", "scheme", "n", "seed", "init_state",
    "metric", "value", "physical_unitary_count",
  ],
  per_order: ["experiment_id", "scheme", "n", "seed", "init_state", "k", "ipc_k", "total"],
  linear_curve: ["experiment_id", "scheme", "n", "seed", "init_state", "delay", "c1"],
  init_metrics: ["experiment_id", "init_state", "n", "seed", "r", "d", "d_w"],
} as const;

export type CsvKind = keyof typeof HEADERS;

export interface ResultRow {
  scheme: string;
  n: number;
  seed: number;
  initState: string;
  metric: string;
  value: number;
}

export interface PerOrderRow {
  scheme: string;
  n: number;
  seed: number;
  initState: string;
  k: number;
  ipcK: number;
  total: number;
}

export interface LinearCurveRow {
  scheme: string;
  n: number;
  seed: number;
  initState: string;
  delay: number;
  c1: number;
}

export interface InitMetricsRow {
  initState: string;
  n: number;
  seed: number;
  r: number | null; // empty cell: ratio undefined (zero baseline)
  d: number;
  dW: number;
}

function parseTable(path: string, kind: CsvKind): string[][] {
  if (!fs.existsSync(path)) {
    throw new SchemaError(`input file not found: ${path}`);
  }
  const text = fs.readFileSync(path, "utf-8");
  const parsed = Papa.parse<string[]>(text.trim(), { skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    throw new SchemaError(`${path}: ${parsed.errors[0].message}`);
  }
  const rows = parsed.data;
  const expected = HEADERS[kind];
  if (rows.length === 0 || rows[0].join(",") !== expected.join(",")) {
    throw new SchemaError(
      `${path}: header does not match the ${kind} schema\n` +
      `  expected: ${expected.join(",")}\n` +
      `  got:      ${(rows[0] ?? []).join(",")}`,
    );
  }
  for (const row of rows.slice(1)) {
    if (row.length !== expected.length) {
      throw new SchemaError(`${path}: row has ${row.length} fields, expected ${expected.length}`);
    }
  }
  return rows.slice(1);
}

function num(field: string, path: string, allowEmpty = false): number | null {
  if (field === "" && allowEmpty) return null;
  const value = Number(field);
  if (!Number.isFinite(value)) {
    throw new SchemaError(`${path}: non-numeric value ${JSON.stringify(field)}`);
  }
  return value;
}

export function loadResults(path: string): ResultRow[] {
  return parseTable(path, "results").map((f) => ({
    scheme: f[1],
    n: num(f[2], path)!,
    seed: num(f[3], path)!,
    initState: f[4],
    metric: f[5],
    value: num(f[6], path)!,
  }));
}

export function loadPerOrder(path: string): PerOrderRow[] {
  return parseTable(path, "per_order").map((f) => ({
    scheme: f[1],
    n: num(f[2], path)!,
    seed: num(f[3], path)!,
    initState: f[4],
    k: num(f[5], path)!,
    ipcK: num(f[6], path)!,
    total: num(f[7], path)!,
  }));
}

export function loadLinearCurve(path: string): LinearCurveRow[] {
  return parseTable(path, "linear_curve").map((f) => ({
    scheme: f[1],
    n: num(f[2], path)!,
    seed: num(f[3], path)!,
    initState: f[4],
    delay: num(f[5], path)!,
    c1: num(f[6], path)!,
  }));
}

export function loadInitMetrics(path: string): InitMetricsRow[] {
  return parseTable(path, "init_metrics").map((f) => ({
    initState: f[1],
    n: num(f[2], path)!,
    seed: num(f[3], path)!,
    r: num(f[4], path, true),
    d: num(f[5], path)!,
    dW: num(f[6], path)!,
  }));
}
