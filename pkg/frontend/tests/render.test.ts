import { existsSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { parseCsv } from "../src/csv.js";
import { runCli } from "../src/render.js";

const HIST = "bin_lo,bin_hi,count,density\n0.25,0.3,10,2.0\n0.3,0.35,30,6.0\n0.35,0.4,10,2.0\n";
const CURVE = "r,density\n0.26,1.5\n0.31,5.5\n0.36,2.5\n";
const ENTROPY =
  "n,q,mean,std_error,samples\n2,1.0,1.08,0.01,100\n3,1.0,1.77,0.01,100\n4,2.0,2.14,0.01,100\n";

function workdir(): string {
  return mkdtempSync(join(tmpdir(), "unigate-figures-"));
}

describe("render CLI", () => {
  it("writes a PNG purity figure with dump-data equal to the inputs", () => {
    const dir = workdir();
    const hist = join(dir, "hist.csv");
    const curve = join(dir, "curve.csv");
    const out = join(dir, "fig.png");
    const dump = join(dir, "dump.csv");
    writeFileSync(hist, HIST);
    writeFileSync(curve, CURVE);
    const code = runCli(["--kind", "purity", "--input", hist, "--curve", curve, "--output", out, "--dump-data", dump]);
    expect(code).toBe(0);
    const png = readFileSync(out);
    expect([...png.subarray(0, 8)]).toEqual([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);
    expect(png.length).toBeGreaterThan(1000);

    const dumped = parseCsv(readFileSync(dump, "utf8"));
    const input = parseCsv(HIST);
    for (const column of ["bin_lo", "bin_hi", "density"]) {
      const want = input.rows.map((r) => Number(r[input.header.indexOf(column)]));
      const got = dumped.rows.filter((r) => r[0] === "hist" && r[1] === column).map((r) => Number(r[3]));
      expect(got).toEqual(want);
    }
    const curveInput = parseCsv(CURVE);
    for (const column of ["r", "density"]) {
      const want = curveInput.rows.map((r) => Number(r[curveInput.header.indexOf(column)]));
      const got = dumped.rows.filter((r) => r[0] === "curve" && r[1] === column).map((r) => Number(r[3]));
      expect(got).toEqual(want);
    }
  });

  it("writes an SVG entropy figure", () => {
    const dir = workdir();
    const table = join(dir, "me.csv");
    const out = join(dir, "fig.svg");
    writeFileSync(table, ENTROPY);
    const code = runCli(["--kind", "entropy-scaling", "--input", table, "--output", out]);
    expect(code).toBe(0);
    const svg = readFileSync(out, "utf8");
    expect(svg).toContain("<svg");
    expect(svg).toContain("circle");
    expect(svg).toContain("stroke-dasharray"); // asymptote lines
  });

  it("fails on an empty CSV without writing the output", () => {
    const dir = workdir();
    const table = join(dir, "empty.csv");
    const out = join(dir, "fig.png");
    writeFileSync(table, "");
    const code = runCli(["--kind", "entropy-scaling", "--input", table, "--output", out]);
    expect(code).toBe(1);
    expect(existsSync(out)).toBe(false);
  });

  it("diagnoses a schema mismatch with the column names", () => {
    const dir = workdir();
    const table = join(dir, "bad.csv");
    const out = join(dir, "fig.png");
    writeFileSync(table, "a,b\n1,2\n");
    const code = runCli(["--kind", "entropy-scaling", "--input", table, "--output", out]);
    expect(code).toBe(1);
    expect(existsSync(out)).toBe(false);
  });

  it("rejects usage errors", () => {
    expect(runCli(["--kind", "purity"])).toBe(1);
    expect(runCli(["--wat"])).toBe(1);
  });
});
