/**
 * Minimal deterministic SVG scene builder: fixed fonts, fixed canvas size,
 * numbers serialized with a fixed precision, no timestamps or random ids.
 * Rendering the same data twice yields byte-identical files.
 */

export const FONT = 'font-family="Helvetica, Arial, sans-serif"';
export const BASELINE_DASH = "6 4";
export const PALETTE = [
  "#1b7837", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d",
];

export function fmt(x: number): string {
  if (!Number.isFinite(x)) throw new Error(`non-finite coordinate ${x}`);
  const s = x.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

export function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export interface Scale {
  (value: number): number;
  domain: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const scale = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  scale.domain = domain;
  return scale;
}

/** Round tick steps to 1/2/5 decades, covering [lo, hi] with ~count ticks. */
export function ticks(lo: number, hi: number, count = 5): number[] {
  if (lo === hi) return [lo];
  const rawStep = (hi - lo) / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (m * mag >= rawStep) {
      step = m * mag;
      break;
    }
  }
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let t = start; t <= hi + step * 1e-9; t += step) {
    out.push(Math.abs(t) < step * 1e-9 ? 0 : Number(t.toPrecision(12)));
  }
  return out;
}

export function tickLabel(t: number): string {
  if (t === 0) return "0";
  const abs = Math.abs(t);
  if (abs >= 1e4 || abs < 1e-3) return t.toExponential(1);
  return Number(t.toPrecision(4)).toString();
}

export class Svg {
  private parts: string[] = [];

  constructor(readonly width: number, readonly height: number) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}">`,
      `<rect width="${width}" height="${height}" fill="white"/>`,
    );
  }

  raw(fragment: string): void {
    this.parts.push(fragment);
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, dash?: string): void {
    const d = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ` +
        `stroke="${stroke}" stroke-width="1.5"${d}/>`,
    );
  }

  polyline(points: Array<[number, number]>, stroke: string, dash?: string): void {
    const d = dash ? ` stroke-dasharray="${dash}"` : "";
    const coords = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(
      `<polyline points="${coords}" fill="none" stroke="${stroke}" stroke-width="1.5"${d}/>`,
    );
  }

  /** Filled band between an upper and a lower trace (same x order). */
  band(
    upper: Array<[number, number]>,
    lower: Array<[number, number]>,
    fill: string,
  ): void {
    const ring = [...upper, ...[...lower].reverse()];
    const coords = ring.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(`<polygon points="${coords}" fill="${fill}" fill-opacity="0.25"/>`);
  }

  text(
    x: number,
    y: number,
    content: string,
    opts: { size?: number; anchor?: string; rotate?: boolean } = {},
  ): void {
    const size = opts.size ?? 11;
    const anchor = opts.anchor ?? "start";
    const transform = opts.rotate ? ` transform="rotate(-90 ${fmt(x)} ${fmt(y)})"` : "";
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" ${FONT} font-size="${size}" ` +
        `text-anchor="${anchor}"${transform}>${escapeXml(content)}</text>`,
    );
  }

  openGroup(cls: string): void {
    this.parts.push(`<g class="${cls}">`);
  }

  closeGroup(): void {
    this.parts.push("</g>");
  }

  toString(): string {
    return [...this.parts, "</svg>"].join("\n") + "\n";
  }
}

export interface PanelBox {
  x: number;
  y: number;
  width: number;
  height: number;
}

/** Draw axes with ticks and labels; returns the x/y scales for the data area. */
export function drawAxes(
  svg: Svg,
  box: PanelBox,
  xDomain: [number, number],
  yDomain: [number, number],
  xLabel: string,
  yLabel: string,
  title?: string,
): { x: Scale; y: Scale } {
  const inset = { left: 46, right: 8, top: title ? 20 : 8, bottom: 34 };
  const plot: PanelBox = {
    x: box.x + inset.left,
    y: box.y + inset.top,
    width: box.width - inset.left - inset.right,
    height: box.height - inset.top - inset.bottom,
  };
  const x = linearScale(xDomain, [plot.x, plot.x + plot.width]);
  const y = linearScale(yDomain, [plot.y + plot.height, plot.y]);
  svg.line(plot.x, plot.y + plot.height, plot.x + plot.width, plot.y + plot.height, "#333");
  svg.line(plot.x, plot.y, plot.x, plot.y + plot.height, "#333");
  for (const t of ticks(xDomain[0], xDomain[1])) {
    const px = x(t);
    svg.line(px, plot.y + plot.height, px, plot.y + plot.height + 4, "#333");
    svg.text(px, plot.y + plot.height + 16, tickLabel(t), { anchor: "middle", size: 10 });
  }
  for (const t of ticks(yDomain[0], yDomain[1])) {
    const py = y(t);
    svg.line(plot.x - 4, py, plot.x, py, "#333");
    svg.text(plot.x - 6, py + 3, tickLabel(t), { anchor: "end", size: 10 });
  }
  svg.text(plot.x + plot.width / 2, box.y + box.height - 4, xLabel, { anchor: "middle" });
  svg.text(box.x + 12, plot.y + plot.height / 2, yLabel, { anchor: "middle", rotate: true });
  if (title) {
    svg.text(plot.x + plot.width / 2, box.y + 14, title, { anchor: "middle", size: 12 });
  }
  return { x, y };
}

/** Pad a [min, max] pair so flat data still spans a visible range. */
export function padDomain(lo: number, hi: number): [number, number] {
  if (lo === hi) {
    const pad = Math.abs(lo) > 0 ? Math.abs(lo) * 0.1 : 1;
    return [lo - pad, hi + pad];
  }
  const pad = (hi - lo) * 0.05;
  return [lo - pad, hi + pad];
}
