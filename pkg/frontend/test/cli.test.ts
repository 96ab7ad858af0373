import fs from "node:fs";
import os from "node:os";
import path from "node:path";

import { afterEach, describe, expect, it, vi } from "vitest";

import { main } from "../src/cli.js";

const HEADER = "algorithm,env,t,mean_pseudo_regret,std_pseudo_regret,n_runs";

const tmpDirs: string[] = [];

function tmpDir(): string {
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "regret-cli-"));
  tmpDirs.push(dir);
  return dir;
}

afterEach(() => {
  vi.restoreAllMocks();
  while (tmpDirs.length > 0) {
    fs.rmSync(tmpDirs.pop()!, { recursive: true, force: true });
  }
});

function writeFixture(): string {
  const lines = [HEADER];
  for (const t of [1, 100, 10_000, 100_000]) {
    lines.push(`rv,stochastic-k2,${t},${Math.sqrt(t)},0.5,20`);
  }
  const file = path.join(tmpDir(), "aggregate.csv");
  fs.writeFileSync(file, lines.join("\n") + "\n");
  return file;
}

function silence() {
  vi.spyOn(console, "log").mockImplementation(() => {});
  vi.spyOn(console, "error").mockImplementation(() => {});
}

describe("cli", () => {
  it("renders and exits 0", () => {
    silence();
    const out = path.join(tmpDir(), "figs");
    expect(main(["render", "--in", writeFixture(), "--out", out])).toBe(0);
    expect(fs.existsSync(path.join(out, "regret_linear.svg"))).toBe(true);
    expect(fs.existsSync(path.join(out, "regret_loglog.svg"))).toBe(true);
    expect(fs.existsSync(path.join(out, "metadata.json"))).toBe(true);
  });

  it("accepts --split", () => {
    silence();
    const out = path.join(tmpDir(), "figs");
    expect(main(["render", "--in", writeFixture(), "--out", out, "--split", "100"])).toBe(0);
    const meta = JSON.parse(fs.readFileSync(path.join(out, "metadata.json"), "utf8"));
    expect(meta.split).toBe(100);
  });

  it("exits 2 on usage errors", () => {
    silence();
    expect(main([])).toBe(2);
    expect(main(["render"])).toBe(2);
    expect(main(["render", "--in", "x.csv"])).toBe(2);
    expect(main(["plot", "--in", "x.csv", "--out", "y"])).toBe(2);
    expect(main(["render", "--in", "x.csv", "--out", "y", "--bogus"])).toBe(2);
    expect(main(["render", "--in", "x.csv", "--out", "y", "--split", "zero"])).toBe(2);
  });

  it("exits 1 on missing or malformed input", () => {
    const errors = vi.spyOn(console, "error").mockImplementation(() => {});
    vi.spyOn(console, "log").mockImplementation(() => {});
    const out = path.join(tmpDir(), "figs");
    expect(main(["render", "--in", path.join(tmpDir(), "nope.csv"), "--out", out])).toBe(1);
    const bad = path.join(tmpDir(), "bad.csv");
    fs.writeFileSync(bad, "not,a,schema\n");
    expect(main(["render", "--in", bad, "--out", out])).toBe(1);
    expect(fs.existsSync(out)).toBe(false);
    expect(errors).toHaveBeenCalled();
    expect(String(errors.mock.calls[0]![0])).toMatch(/^error:/);
  });
});
