#!/usr/bin/env node
import { pathToFileURL } from "node:url";
import { parseArgs } from "node:util";

import { SchemaError } from "./csv.js";
import { DEFAULT_SPLIT, render } from "./render.js";

const USAGE =
  "usage: regret-plots render --in <aggregate.csv> --out <dir> [--split 10000]";

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        in: { type: "string" },
        out: { type: "string" },
        split: { type: "string" },
      },
    });
  } catch (exc) {
    console.error(`${(exc as Error).message}\n${USAGE}`);
    return 2;
  }
  const { positionals, values } = parsed;
  if (positionals.length !== 1 || positionals[0] !== "render") {
    console.error(USAGE);
    return 2;
  }
  if (values.in === undefined || values.out === undefined) {
    console.error(`--in and --out are required\n${USAGE}`);
    return 2;
  }
  let split = DEFAULT_SPLIT;
  if (values.split !== undefined) {
    split = Number(values.split);
    if (!Number.isInteger(split) || split < 1) {
      console.error(`--split must be a positive integer\n${USAGE}`);
      return 2;
    }
  }
  try {
    const result = render({ input: values.in, outDir: values.out, split });
    console.log(`wrote ${result.linear}, ${result.loglog} and ${result.metadata}`);
    return 0;
  } catch (exc) {
    if (exc instanceof SchemaError) {
      console.error(`error: ${exc.message}`);
      return 1;
    }
    if (exc instanceof Error && "code" in exc) {
      console.error(`error: ${exc.message}`);
      return 1;
    }
    throw exc;
  }
}

if (process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
