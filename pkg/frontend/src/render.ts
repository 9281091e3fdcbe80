#!/usr/bin/env node
/** CLI: render unigate CSV outputs into figure files.
 *
 *   render --kind purity --input hist.csv --curve curve.csv --output fig.png
 *   render --kind entropy-scaling --input mean_entropy.csv --output fig.svg
 *
 * Optional --dump-data out.csv writes exactly the plotted arrays.
 * Output format follows the file extension (.png or .svg).
 * Exit codes: 0 ok, 1 schema/usage errors (nothing is written on failure).
 */

import { readFileSync, writeFileSync } from "node:fs";

import { parseCsv, SchemaError } from "./csv.js";
import { buildFigure, dumpData } from "./figure.js";
import { layoutFigure } from "./layout.js";
import { renderPng } from "./png.js";
import { renderSvg } from "./svg.js";

interface Args {
  kind?: string;
  input?: string;
  curve?: string;
  output?: string;
  dumpData?: string;
}

function parseArgs(argv: string[]): Args {
  const args: Args = {};
  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i];
    const value = argv[i + 1];
    switch (flag) {
      case "--kind":
        args.kind = value;
        i++;
        break;
      case "--input":
        args.input = value;
        i++;
        break;
      case "--curve":
        args.curve = value;
        i++;
        break;
      case "--output":
        args.output = value;
        i++;
        break;
      case "--dump-data":
        args.dumpData = value;
        i++;
        break;
      default:
        throw new SchemaError(`unknown flag ${flag}`);
    }
  }
  return args;
}

export function runCli(argv: string[]): number {
  try {
    const args = parseArgs(argv);
    if (!args.kind || !args.input || !args.output) {
      throw new SchemaError("usage: render --kind purity|entropy-scaling --input data.csv [--curve curve.csv] --output fig.png [--dump-data out.csv]");
    }
    const input = parseCsv(readFileSync(args.input, "utf8"));
    const curve = args.curve ? parseCsv(readFileSync(args.curve, "utf8")) : undefined;
    const model = buildFigure(args.kind, input, curve);
    const layout = layoutFigure(model);
    if (args.output.endsWith(".svg")) {
      writeFileSync(args.output, renderSvg(layout));
    } else {
      writeFileSync(args.output, renderPng(layout));
    }
    if (args.dumpData) {
      writeFileSync(args.dumpData, dumpData(model));
    }
    console.log(`wrote ${args.output}`);
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url.endsWith(process.argv[1].split("/").pop() as string);
if (invokedDirectly) {
  process.exit(runCli(process.argv.slice(2)));
}
