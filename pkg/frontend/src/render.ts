import fs from "node:fs";
import path from "node:path";

import { buildLinearView, buildLogLogView, ChartOptions, viewToSvg } from "./chart.js";
import { readAggregateCsv, SchemaError } from "./csv.js";

export const VERSION = "0.1.0";
export const DEFAULT_SPLIT = 10_000;

export interface PlotSpec extends ChartOptions {
  /** Aggregate CSV produced by the simulator. */
  input: string;
  /** Directory receiving the two SVGs and the metadata sidecar. */
  outDir: string;
  /** Boundary round: linear view covers t <= split, log-log t >= split. */
  split?: number;
}

export interface RenderResult {
  linear: string;
  loglog: string;
  metadata: string;
}

/**
 * Render both figures for one aggregate CSV.
 *
 * All validation happens before anything is written, so a bad input
 * leaves the output directory untouched.  Output bytes are a pure
 * function of the CSV and the spec; the sidecar records the versions
 * they were produced with.
 */
export function render(spec: PlotSpec): RenderResult {
  const split = spec.split ?? DEFAULT_SPLIT;
  if (!Number.isInteger(split) || split < 1) {
    throw new SchemaError(`split must be a positive integer, got ${split}`);
  }
  const rows = readAggregateCsv(spec.input);
  if (rows.length === 0) {
    throw new SchemaError("no data rows: nothing to plot");
  }
  const tMin = Math.min(...rows.map((r) => r.t));
  const tMax = Math.max(...rows.map((r) => r.t));
  if (split < tMin || split > tMax) {
    throw new SchemaError(
      `split ${split} is outside the data range [${tMin}, ${tMax}]`
    );
  }
  const options: ChartOptions = { order: spec.order, colors: spec.colors };
  const linearSvg = viewToSvg(buildLinearView(rows, split, options));
  const loglogSvg = viewToSvg(buildLogLogView(rows, split, options));

  const algorithms = [...new Set(rows.map((r) => r.algorithm))];
  const metadata = `${JSON.stringify(
    {
      generator: `regret-plots@${VERSION}`,
      node: process.version,
      input: path.basename(spec.input),
      split,
      algorithms,
    },
    null,
    2
  )}\n`;

  fs.mkdirSync(spec.outDir, { recursive: true });
  const linear = path.join(spec.outDir, "regret_linear.svg");
  const loglog = path.join(spec.outDir, "regret_loglog.svg");
  const meta = path.join(spec.outDir, "metadata.json");
  fs.writeFileSync(linear, linearSvg);
  fs.writeFileSync(loglog, loglogSvg);
  fs.writeFileSync(meta, metadata);
  return { linear, loglog, metadata: meta };
}
