import * as fs from "fs";
import * as os from "os";
import * as path from "path";

import { describe, expect, it } from "vitest";

import { FigureDataError, FigureKind, renderFigure } from "../src/figures.js";

const FIXTURES = path.join(__dirname, "fixtures");

function spec(kind: FigureKind, dir: string, file: string) {
  return { kind, csvPath: path.join(FIXTURES, dir, file), outPath: null };
}

const ALL: Array<[FigureKind, string, string]> = [
  ["memory-curve", "ipc", "linear_curve.csv"],
  ["ipc-vs-n", "ipc", "per_order.csv"],
  ["nrmse-vs-n", "lorenz", "results.csv"],
  ["init-metrics", "init", "init_metrics.csv"],
];

describe("renderFigure", () => {
  it.each(ALL)("renders %s without error", (kind, dir, file) => {
    const svg = renderFigure(spec(kind, dir, file));
    expect(svg.startsWith("<svg ")).toBe(true);
    expect(svg).toContain("</svg>");
    expect(svg).toContain("<polyline");
  });

  it.each(ALL)("draws the quadratic baseline dashed in %s", (kind, dir, file) => {
    const svg = renderFigure(spec(kind, dir, file));
    expect(svg).toContain('stroke-dasharray="6 4"');
  });

  it("draws the ipc-vs-n baseline as a horizontal line", () => {
    const svg = renderFigure(spec("ipc-vs-n", "ipc", "per_order.csv"));
    const match = svg.match(
      /<line x1="([\d.]+)" y1="([\d.]+)" x2="([\d.]+)" y2="([\d.]+)" stroke="#222" stroke-width="1.5" stroke-dasharray="6 4"\/>/,
    );
    expect(match).not.toBeNull();
    expect(match![2]).toBe(match![4]); // same y at both ends
    expect(Number(match![3])).toBeGreaterThan(Number(match![1]));
  });

  it("renders seed bands with multiple seeds and none with a single seed", () => {
    const multi = renderFigure(spec("ipc-vs-n", "ipc", "per_order.csv"));
    expect(multi).toContain("<polygon");
    const single = renderFigure(spec("ipc-vs-n", "ipc_single", "per_order.csv"));
    expect(single).not.toContain("<polygon");
    expect(single).toContain("<polyline");
  });

  it("is a pure function of the CSV bytes and spec", () => {
    const a = renderFigure(spec("init-metrics", "init", "init_metrics.csv"));
    const b = renderFigure(spec("init-metrics", "init", "init_metrics.csv"));
    expect(a).toBe(b);
  });

  it("lays out three aligned panels for init-metrics", () => {
    const svg = renderFigure(spec("init-metrics", "init", "init_metrics.csv"));
    expect(svg.match(/<g class="panel">/g)!.length).toBe(3);
    expect(svg).toContain("ratio R");
    expect(svg).toContain("difference D");
    expect(svg).toContain("windowed difference D_W");
    const states = ["up", "same_random", "entangled", "mixed", "new_random"];
    for (const state of states) expect(svg).toContain(state);
  });

  it("rejects data without baseline rows", () => {
    const dir = fs.mkdtempSync(path.join(os.tmpdir(), "qrcfig-"));
    const file = path.join(dir, "per_order.csv");
    fs.writeFileSync(
      file,
      "experiment_id,scheme,n,seed,init_state,k,ipc_k,total\n" +
        "x,lcqa,2,0,up,1,0.5,0.5\nx,lcqa,3,0,up,1,0.6,0.6\n",
    );
    expect(() => renderFigure({ kind: "ipc-vs-n", csvPath: file, outPath: null })).toThrow(
      FigureDataError,
    );
  });

  it("writes the file when outPath is given", () => {
    const dir = fs.mkdtempSync(path.join(os.tmpdir(), "qrcfig-"));
    const out = path.join(dir, "fig.svg");
    const svg = renderFigure({
      kind: "memory-curve",
      csvPath: path.join(FIXTURES, "init", "linear_curve.csv"),
      outPath: out,
    });
    expect(fs.readFileSync(out, "utf-8")).toBe(svg);
  });

  it("honors the band styling option", () => {
    const svg = renderFigure({
      kind: "ipc-vs-n",
      csvPath: path.join(FIXTURES, "ipc", "per_order.csv"),
      outPath: null,
      bands: false,
    });
    expect(svg).not.toContain("<polygon");
  });
});
