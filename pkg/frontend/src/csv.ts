import fs from "node:fs";

/** One aggregate checkpoint: mean and std of pseudo-regret across runs. */
export interface AggregateRow {
  algorithm: string;
  env: string;
  t: number;
  mean: number;
  std: number;
  nRuns: number;
}

export const AGGREGATE_HEADER = [
  "algorithm",
  "env",
  "t",
  "mean_pseudo_regret",
  "std_pseudo_regret",
  "n_runs",
] as const;

/** Raised when the input does not match the aggregate CSV schema. */
export class SchemaError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaError";
  }
}

function splitLine(line: string, lineNo: number): string[] {
  // The harness never quotes fields (ids and labels contain no commas);
  // a quoted field therefore signals a foreign file.
  if (line.includes('"')) {
    throw new SchemaError(`line ${lineNo}: quoted fields are not part of the schema`);
  }
  return line.split(",");
}

function parseNumber(raw: string, field: string, lineNo: number): number {
  const value = Number(raw);
  if (raw.trim() === "" || !Number.isFinite(value)) {
    throw new SchemaError(`line ${lineNo}: ${field} is not a finite number: ${raw}`);
  }
  return value;
}

function parseCount(raw: string, field: string, lineNo: number): number {
  const value = parseNumber(raw, field, lineNo);
  if (!Number.isInteger(value) || value < 1) {
    throw new SchemaError(`line ${lineNo}: ${field} must be a positive integer: ${raw}`);
  }
  return value;
}

/** Parse aggregate CSV text, validating the header and every row. */
export function parseAggregateCsv(text: string): AggregateRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaError("empty file: expected an aggregate CSV header");
  }
  const header = splitLine(lines[0]!, 1);
  if (header.join(",") !== AGGREGATE_HEADER.join(",")) {
    throw new SchemaError(
      `header mismatch: expected ${AGGREGATE_HEADER.join(",")}, got ${lines[0]}`
    );
  }
  const rows: AggregateRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const fields = splitLine(lines[i]!, i + 1);
    if (fields.length !== AGGREGATE_HEADER.length) {
      throw new SchemaError(
        `line ${i + 1}: expected ${AGGREGATE_HEADER.length} fields, got ${fields.length}`
      );
    }
    const std = parseNumber(fields[4]!, "std_pseudo_regret", i + 1);
    if (std < 0) {
      throw new SchemaError(`line ${i + 1}: std_pseudo_regret must be >= 0`);
    }
    rows.push({
      algorithm: fields[0]!,
      env: fields[1]!,
      t: parseCount(fields[2]!, "t", i + 1),
      mean: parseNumber(fields[3]!, "mean_pseudo_regret", i + 1),
      std,
      nRuns: parseCount(fields[5]!, "n_runs", i + 1),
    });
  }
  return rows;
}

export function readAggregateCsv(path: string): AggregateRow[] {
  return parseAggregateCsv(fs.readFileSync(path, "utf8"));
}
