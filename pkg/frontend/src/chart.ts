import { AggregateRow, SchemaError } from "./csv.js";
import { fmtTick, linearTicks, logTicks } from "./scale.js";
import { document, el, SvgNode } from "./svg.js";

export interface ChartOptions {
  /** Algorithms drawn in this order; unlisted ones follow in file order. */
  order?: string[];
  /** Per-algorithm color overrides. */
  colors?: Record<string, string>;
}

export const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
];

export interface SeriesPoint {
  t: number;
  mean: number;
  lower: number;
  upper: number;
}

export interface Series {
  algorithm: string;
  color: string;
  points: SeriesPoint[];
}

export interface ChartView {
  kind: "linear" | "loglog";
  env: string;
  series: Series[];
  xDomain: [number, number];
  yDomain: [number, number];
  xTicks: number[];
  yTicks: number[];
}

interface Grouped {
  env: string;
  series: Series[];
}

/** Group rows per algorithm, fix colors, and validate ordering. */
export function groupSeries(rows: AggregateRow[], options: ChartOptions = {}): Grouped {
  if (rows.length === 0) {
    throw new SchemaError("no data rows to plot");
  }
  const env = rows[0]!.env;
  const byAlgorithm = new Map<string, SeriesPoint[]>();
  for (const row of rows) {
    if (row.env !== env) {
      throw new SchemaError(`mixed environments in one file: ${env} and ${row.env}`);
    }
    let points = byAlgorithm.get(row.algorithm);
    if (points === undefined) {
      points = [];
      byAlgorithm.set(row.algorithm, points);
    }
    const last = points[points.length - 1];
    if (last !== undefined && row.t <= last.t) {
      throw new SchemaError(`${row.algorithm}: checkpoints must increase, got t=${row.t}`);
    }
    points.push({
      t: row.t,
      mean: row.mean,
      lower: row.mean - 2 * row.std,
      upper: row.mean + 2 * row.std,
    });
  }
  const names = [...byAlgorithm.keys()];
  let ordered = names;
  if (options.order !== undefined) {
    for (const name of options.order) {
      if (!byAlgorithm.has(name)) {
        throw new SchemaError(`display order names unknown algorithm ${name}`);
      }
    }
    const listed = new Set(options.order);
    ordered = [...options.order, ...names.filter((n) => !listed.has(n))];
  }
  const series = ordered.map((name, index) => ({
    algorithm: name,
    color: options.colors?.[name] ?? PALETTE[index % PALETTE.length]!,
    points: byAlgorithm.get(name)!,
  }));
  return { env, series };
}

function decadeFloor(value: number): number {
  return Math.pow(10, Math.floor(Math.log10(value) + 1e-12));
}

function decadeCeil(value: number): number {
  return Math.pow(10, Math.ceil(Math.log10(value) - 1e-12));
}

/** The early rounds on linear axes: checkpoints with t <= split. */
export function buildLinearView(
  rows: AggregateRow[],
  split: number,
  options: ChartOptions = {}
): ChartView {
  const grouped = groupSeries(rows, options);
  const series = grouped.series.map((s) => ({
    ...s,
    points: s.points.filter((p) => p.t <= split),
  }));
  for (const s of series) {
    if (s.points.length === 0) {
      throw new SchemaError(`${s.algorithm} has no checkpoints at or below t=${split}`);
    }
  }
  let top = 0;
  for (const s of series) {
    for (const p of s.points) {
      top = Math.max(top, p.upper);
    }
  }
  if (top <= 0) {
    top = 1;
  }
  return {
    kind: "linear",
    env: grouped.env,
    series,
    xDomain: [0, split],
    yDomain: [0, top],
    xTicks: linearTicks(0, split),
    yTicks: linearTicks(0, top),
  };
}

/** The tail on log-log axes: checkpoints with t >= split, decade-framed. */
export function buildLogLogView(
  rows: AggregateRow[],
  split: number,
  options: ChartOptions = {}
): ChartView {
  const grouped = groupSeries(rows, options);
  const series = grouped.series.map((s) => ({
    ...s,
    points: s.points.filter((p) => p.t >= split),
  }));
  let tMax = split;
  let positiveMin = Infinity;
  let positiveMax = 0;
  for (const s of series) {
    if (s.points.length === 0) {
      throw new SchemaError(`${s.algorithm} has no checkpoints at or above t=${split}`);
    }
    for (const p of s.points) {
      tMax = Math.max(tMax, p.t);
      for (const v of [p.mean, p.lower, p.upper]) {
        if (v > 0) {
          positiveMin = Math.min(positiveMin, v);
          positiveMax = Math.max(positiveMax, v);
        }
      }
    }
  }
  if (positiveMax === 0) {
    throw new SchemaError("log-log view needs positive regret values");
  }
  let yLo = decadeFloor(positiveMin);
  const yHi = decadeCeil(positiveMax);
  if (yLo === yHi) {
    yLo = yHi / 10;
  }
  const xHi = tMax > split ? tMax : split * Math.sqrt(10);
  const clamped = series.map((s) => ({
    ...s,
    points: s.points.map((p) => ({
      ...p,
      mean: Math.max(p.mean, yLo),
      lower: Math.max(p.lower, yLo),
      upper: Math.max(p.upper, yLo),
    })),
  }));
  return {
    kind: "loglog",
    env: grouped.env,
    series: clamped,
    xDomain: [split, xHi],
    yDomain: [yLo, yHi],
    xTicks: logTicks(split, xHi),
    yTicks: logTicks(yLo, yHi),
  };
}

const WIDTH = 820;
const HEIGHT = 460;
const PLOT = { x: 64, y: 28, w: 556, h: 372 };

function mapper(domain: [number, number], r0: number, r1: number, log: boolean) {
  const d0 = log ? Math.log10(domain[0]) : domain[0];
  const d1 = log ? Math.log10(domain[1]) : domain[1];
  const span = d1 - d0;
  return (value: number) => {
    const v = log ? Math.log10(value) : value;
    return r0 + ((v - d0) / span) * (r1 - r0);
  };
}

function pathOf(points: SeriesPoint[], mapX: (v: number) => number, mapY: (v: number) => number): string {
  return points
    .map((p, i) => `${i === 0 ? "M" : "L"}${mapX(p.t).toFixed(2)} ${mapY(p.mean).toFixed(2)}`)
    .join("");
}

function bandOf(points: SeriesPoint[], mapX: (v: number) => number, mapY: (v: number) => number): string {
  const upper = points
    .map((p, i) => `${i === 0 ? "M" : "L"}${mapX(p.t).toFixed(2)} ${mapY(p.upper).toFixed(2)}`)
    .join("");
  const lower = [...points]
    .reverse()
    .map((p) => `L${mapX(p.t).toFixed(2)} ${mapY(p.lower).toFixed(2)}`)
    .join("");
  return `${upper}${lower}Z`;
}

/** Serialize one view to a standalone SVG document. */
export function viewToSvg(view: ChartView): string {
  const log = view.kind === "loglog";
  const mapX = mapper(view.xDomain, PLOT.x, PLOT.x + PLOT.w, log);
  const mapY = mapper(view.yDomain, PLOT.y + PLOT.h, PLOT.y, log);

  const children: SvgNode[] = [
    el("rect", { x: 0, y: 0, width: WIDTH, height: HEIGHT, fill: "#ffffff" }),
    el("text", {
      x: PLOT.x + PLOT.w / 2,
      y: 18,
      "text-anchor": "middle",
      "font-size": 13,
      fill: "#333333",
    }, [], view.env),
  ];

  for (const tick of view.xTicks) {
    const x = mapX(tick).toFixed(2);
    children.push(
      el("line", {
        x1: x, y1: PLOT.y, x2: x, y2: PLOT.y + PLOT.h,
        stroke: "#dddddd", "stroke-width": 1,
      }),
      el("text", {
        x, y: PLOT.y + PLOT.h + 18, "text-anchor": "middle", fill: "#333333",
      }, [], fmtTick(tick))
    );
  }
  for (const tick of view.yTicks) {
    const y = mapY(tick).toFixed(2);
    children.push(
      el("line", {
        x1: PLOT.x, y1: y, x2: PLOT.x + PLOT.w, y2: y,
        stroke: "#dddddd", "stroke-width": 1,
      }),
      el("text", {
        x: PLOT.x - 8, y, "text-anchor": "end", "dominant-baseline": "middle",
        fill: "#333333",
      }, [], fmtTick(tick))
    );
  }

  for (const s of view.series) {
    children.push(
      el("path", {
        class: "band",
        d: bandOf(s.points, mapX, mapY),
        fill: s.color,
        "fill-opacity": 0.18,
        stroke: "none",
      })
    );
  }
  for (const s of view.series) {
    children.push(
      el("path", {
        class: "mean",
        d: pathOf(s.points, mapX, mapY),
        fill: "none",
        stroke: s.color,
        "stroke-width": 1.5,
      })
    );
  }

  children.push(
    el("rect", {
      x: PLOT.x, y: PLOT.y, width: PLOT.w, height: PLOT.h,
      fill: "none", stroke: "#888888", "stroke-width": 1,
    })
  );

  view.series.forEach((s, i) => {
    const ly = PLOT.y + 10 + i * 18;
    const lx = PLOT.x + PLOT.w + 14;
    children.push(
      el("line", {
        x1: lx, y1: ly, x2: lx + 22, y2: ly, stroke: s.color, "stroke-width": 2,
      }),
      el("text", {
        x: lx + 28, y: ly, "dominant-baseline": "middle", fill: "#333333",
      }, [], s.algorithm)
    );
  });

  children.push(
    el("text", {
      x: PLOT.x + PLOT.w / 2, y: HEIGHT - 10, "text-anchor": "middle", fill: "#333333",
    }, [], "round t"),
    el("text", {
      x: 16, y: PLOT.y + PLOT.h / 2, "text-anchor": "middle", fill: "#333333",
      transform: `rotate(-90 16 ${PLOT.y + PLOT.h / 2})`,
    }, [], "pseudo-regret")
  );

  const root = el("svg", {
    xmlns: "http://www.w3.org/2000/svg",
    width: WIDTH,
    height: HEIGHT,
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    "font-family": "Helvetica, Arial, sans-serif",
    "font-size": 12,
  }, children);
  return document(root);
}
