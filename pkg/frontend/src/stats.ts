/** Aggregation of per-seed values into mean lines and standard-deviation bands. */

export interface PointStat {
  x: number;
  mean: number;
  /** Sample std-dev across seeds; null with a single seed (no band drawn). */
  std: number | null;
}

export function mean(values: number[]): number {
  return values.reduce((a, b) => a + b, 0) / values.length;
}

export function sampleStd(values: number[]): number | null {
  if (values.length < 2) return null;
  const m = mean(values);
  const ss = values.reduce((a, b) => a + (b - m) * (b - m), 0);
  return Math.sqrt(ss / (values.length - 1));
}

/**
 * Collapse (x, value) observations (one per seed) into per-x mean and std,
 * sorted by x so rendering order is deterministic.
 */
export function aggregate(points: Array<{ x: number; value: number }>): PointStat[] {
  const byX = new Map<number, number[]>();
  for (const p of points) {
    const bucket = byX.get(p.x);
    if (bucket) bucket.push(p.value);
    else byX.set(p.x, [p.value]);
  }
  return [...byX.entries()]
    .sort((a, b) => a[0] - b[0])
    .map(([x, values]) => ({ x, mean: mean(values), std: sampleStd(values) }));
}

/** Stable grouping helper; group order follows first appearance after sorting keys. */
export function groupBy<T>(rows: T[], key: (row: T) => string): Map<string, T[]> {
  const groups = new Map<string, T[]>();
  for (const key_ of [...new Set(rows.map(key))].sort()) groups.set(key_, []);
  for (const row of rows) groups.get(key(row))!.push(row);
  return groups;
}
