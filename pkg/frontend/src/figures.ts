/**
 * The four figure kinds rendered from sweep CSVs. Plotting never recomputes
 * any science: every number drawn comes straight from the CSV rows, reduced
 * only to per-seed means and standard deviations.
 */

import * as fs from "fs";
import * as path from "path";

import {
  loadInitMetrics,
  loadLinearCurve,
  loadPerOrder,
  loadResults,
} from "./csv.js";
import { aggregate, groupBy, mean, PointStat } from "./stats.js";
import {
  BASELINE_DASH,
  drawAxes,
  padDomain,
  PALETTE,
  PanelBox,
  Scale,
  Svg,
} from "./svg.js";

export class FigureDataError extends Error {}

export const FIGURE_KINDS = ["memory-curve", "ipc-vs-n", "nrmse-vs-n", "init-metrics"] as const;
export type FigureKind = (typeof FIGURE_KINDS)[number];

export interface FigureSpec {
  kind: FigureKind;
  csvPath: string;
  outPath: string | null;
  width?: number;
  height?: number;
  /** Dash pattern for the quadratic-baseline line. */
  baselineDash?: string;
  /** Draw +-1 std-dev bands across seeds (skipped automatically for one seed). */
  bands?: boolean;
}

export const CSV_FOR_KIND: Record<FigureKind, string> = {
  "memory-curve": "linear_curve.csv",
  "ipc-vs-n": "per_order.csv",
  "nrmse-vs-n": "results.csv",
  "init-metrics": "init_metrics.csv",
};

interface Series {
  label: string;
  stats: PointStat[];
  dash?: string;
}

interface Baseline {
  label: string;
  value: number;
}

function seriesExtent(series: Series[], baselines: Baseline[]): {
  x: [number, number];
  y: [number, number];
} {
  const xs: number[] = [];
  const ys: number[] = [];
  for (const s of series) {
    for (const p of s.stats) {
      xs.push(p.x);
      ys.push(p.mean);
      if (p.std !== null) ys.push(p.mean - p.std, p.mean + p.std);
    }
  }
  for (const b of baselines) ys.push(b.value);
  if (xs.length === 0) throw new FigureDataError("no data rows to plot");
  return {
    x: [Math.min(...xs), Math.max(...xs)],
    y: padDomain(Math.min(...ys), Math.max(...ys)),
  };
}

function drawSeries(
  svg: Svg,
  scales: { x: Scale; y: Scale },
  series: Series,
  color: string,
  bands: boolean,
): void {
  const pts = series.stats.map((p) => [scales.x(p.x), scales.y(p.mean)] as [number, number]);
  if (bands && series.stats.length > 1 && series.stats.every((p) => p.std !== null)) {
    const upper = series.stats.map(
      (p) => [scales.x(p.x), scales.y(p.mean + (p.std as number))] as [number, number],
    );
    const lower = series.stats.map(
      (p) => [scales.x(p.x), scales.y(p.mean - (p.std as number))] as [number, number],
    );
    svg.band(upper, lower, color);
  }
  svg.polyline(pts, color, series.dash);
}

function drawLegend(
  svg: Svg,
  box: PanelBox,
  entries: Array<{ label: string; color: string; dash?: string }>,
): void {
  const x0 = box.x + box.width - 150;
  let y = box.y + 26;
  svg.openGroup("legend");
  for (const e of entries) {
    svg.line(x0, y - 4, x0 + 22, y - 4, e.color, e.dash);
    svg.text(x0 + 28, y, e.label, { size: 10 });
    y += 14;
  }
  svg.closeGroup();
}

function renderPanel(
  svg: Svg,
  box: PanelBox,
  series: Series[],
  baselines: Baseline[],
  labels: { x: string; y: string; title?: string },
  opts: { baselineDash: string; bands: boolean },
): void {
  const extent = seriesExtent(series, baselines);
  const scales = drawAxes(svg, box, extent.x, extent.y, labels.x, labels.y, labels.title);
  svg.openGroup("panel");
  const legend: Array<{ label: string; color: string; dash?: string }> = [];
  for (const b of baselines) {
    svg.line(scales.x(extent.x[0]), scales.y(b.value), scales.x(extent.x[1]), scales.y(b.value),
      "#222", opts.baselineDash);
    legend.push({ label: b.label, color: "#222", dash: opts.baselineDash });
  }
  series.forEach((s, i) => {
    const color = s.dash ? "#222" : PALETTE[i % PALETTE.length];
    drawSeries(svg, scales, s, color, opts.bands);
    legend.push({ label: s.label, color, dash: s.dash });
  });
  svg.closeGroup();
  drawLegend(svg, box, legend);
}

function memoryCurveFigure(spec: FigureSpec, svg: Svg, box: PanelBox, opts: {
  baselineDash: string;
  bands: boolean;
}): void {
  const rows = loadLinearCurve(spec.csvPath);
  const initStates = new Set(rows.filter((r) => r.scheme === "lcqa").map((r) => r.initState));
  const series: Series[] = [];
  for (const [key, group] of groupBy(rows, (r) => `${r.scheme}|${r.initState}|${r.n}`)) {
    const [scheme, initState, n] = key.split("|");
    const stats = aggregate(group.map((r) => ({ x: r.delay, value: r.c1 })));
    if (scheme === "qcqa") {
      series.push({ label: "qcqa", stats, dash: opts.baselineDash });
    } else {
      const label = initStates.size > 1 ? `${initState} n=${n}` : `n=${n}`;
      series.push({ label, stats });
    }
  }
  // Baseline first so the quadratic curve sits behind the restricted ones.
  series.sort((a, b) => (a.dash ? -1 : b.dash ? 1 : a.label.localeCompare(b.label)));
  renderPanel(svg, box, series, [], {
    x: "steps into the past d",
    y: "linear capacity C1",
    title: "Linear memory",
  }, opts);
}

function ipcVsNFigure(spec: FigureSpec, svg: Svg, box: PanelBox, opts: {
  baselineDash: string;
  bands: boolean;
}): void {
  const rows = loadPerOrder(spec.csvPath);
  // `total` repeats on every per-order row of a cell; dedupe per cell.
  const totals = new Map<string, { scheme: string; n: number; total: number }>();
  for (const r of rows) {
    totals.set(`${r.scheme}|${r.n}|${r.seed}`, { scheme: r.scheme, n: r.n, total: r.total });
  }
  const cells = [...totals.values()];
  const restricted = cells.filter((c) => c.scheme === "lcqa");
  const baselineCells = cells.filter((c) => c.scheme === "qcqa");
  if (baselineCells.length === 0) {
    throw new FigureDataError(`${spec.csvPath}: no quadratic-baseline rows (sentinel n = -1)`);
  }
  if (restricted.length === 0) {
    throw new FigureDataError(`${spec.csvPath}: no restricted-memory rows to plot`);
  }
  const series: Series[] = [
    { label: "lcqa", stats: aggregate(restricted.map((c) => ({ x: c.n, value: c.total }))) },
  ];
  const baselines: Baseline[] = [
    { label: "qcqa limit", value: mean(baselineCells.map((c) => c.total)) },
  ];
  renderPanel(svg, box, series, baselines, {
    x: "reset length n",
    y: "total IPC",
    title: "Total capacity vs reset length",
  }, opts);
}

function nrmseVsNFigure(spec: FigureSpec, svg: Svg, box: PanelBox, opts: {
  baselineDash: string;
  bands: boolean;
}): void {
  const rows = loadResults(spec.csvPath).filter((r) => r.metric.startsWith("nrmse_"));
  if (rows.length === 0) {
    throw new FigureDataError(`${spec.csvPath}: no nrmse_* rows to plot`);
  }
  const series: Series[] = [];
  const baselines: Baseline[] = [];
  for (const [metric, group] of groupBy(rows, (r) => r.metric)) {
    const task = metric.replace("nrmse_", "");
    const restricted = group.filter((r) => r.scheme === "lcqa");
    const baseline = group.filter((r) => r.scheme === "qcqa");
    if (baseline.length === 0) {
      throw new FigureDataError(`${spec.csvPath}: no quadratic-baseline rows for ${metric}`);
    }
    series.push({
      label: task,
      stats: aggregate(restricted.map((r) => ({ x: r.n, value: r.value }))),
    });
    baselines.push({ label: `${task} qcqa`, value: mean(baseline.map((r) => r.value)) });
  }
  renderPanel(svg, box, series, baselines, {
    x: "reset length n",
    y: "NRMSE",
    title: "Lorenz one-step prediction",
  }, opts);
}

function initMetricsFigure(spec: FigureSpec, svg: Svg, box: PanelBox, opts: {
  baselineDash: string;
  bands: boolean;
}): void {
  const rows = loadInitMetrics(spec.csvPath);
  const controls = rows.filter((r) => r.initState === "qcqa");
  if (controls.length === 0) {
    throw new FigureDataError(`${spec.csvPath}: no qcqa control rows`);
  }
  const panels: Array<{
    title: string;
    pick: (r: (typeof rows)[number]) => number | null;
    control: (r: (typeof rows)[number]) => number | null;
  }> = [
    { title: "ratio R", pick: (r) => r.r, control: (r) => r.r },
    { title: "difference D", pick: (r) => r.d, control: (r) => r.d },
    { title: "windowed difference D_W", pick: (r) => r.dW, control: (r) => r.dW },
  ];
  const panelWidth = box.width / 3;
  panels.forEach((panel, idx) => {
    const panelBox: PanelBox = {
      x: box.x + idx * panelWidth,
      y: box.y,
      width: panelWidth,
      height: box.height,
    };
    const series: Series[] = [];
    for (const [state, group] of groupBy(
      rows.filter((r) => r.initState !== "qcqa"),
      (r) => r.initState,
    )) {
      const points = group
        .map((r) => ({ x: r.n, value: panel.pick(r) }))
        .filter((p): p is { x: number; value: number } => p.value !== null);
      if (points.length > 0) series.push({ label: state, stats: aggregate(points) });
    }
    const controlValues = controls
      .map(panel.control)
      .filter((v): v is number => v !== null);
    const baselines: Baseline[] = controlValues.length
      ? [{ label: "qcqa", value: mean(controlValues) }]
      : [];
    renderPanel(svg, panelBox, series, baselines, {
      x: "reset length n",
      y: panel.title,
      title: panel.title,
    }, opts);
  });
}

export function renderFigure(spec: FigureSpec): string {
  const defaultSize: Record<FigureKind, [number, number]> = {
    "memory-curve": [640, 420],
    "ipc-vs-n": [640, 420],
    "nrmse-vs-n": [640, 420],
    "init-metrics": [960, 360],
  };
  const [dw, dh] = defaultSize[spec.kind];
  const width = spec.width ?? dw;
  const height = spec.height ?? dh;
  const opts = {
    baselineDash: spec.baselineDash ?? BASELINE_DASH,
    bands: spec.bands ?? true,
  };
  const svg = new Svg(width, height);
  const box: PanelBox = { x: 0, y: 0, width, height };
  switch (spec.kind) {
    case "memory-curve":
      memoryCurveFigure(spec, svg, box, opts);
      break;
    case "ipc-vs-n":
      ipcVsNFigure(spec, svg, box, opts);
      break;
    case "nrmse-vs-n":
      nrmseVsNFigure(spec, svg, box, opts);
      break;
    case "init-metrics":
      initMetricsFigure(spec, svg, box, opts);
      break;
  }
  const out = svg.toString();
  if (spec.outPath !== null) {
    fs.mkdirSync(path.dirname(path.resolve(spec.outPath)), { recursive: true });
    fs.writeFileSync(spec.outPath, out, "utf-8");
  }
  return out;
}
