#!/usr/bin/env node
import { parseArgs } from "node:util";
import { pathToFileURL } from "node:url";
import { ContractError } from "./csv.js";
import {
  FIGURE_KINDS,
  FigureError,
  FigureKind,
  GROUP_KEYS,
  GroupKey,
  YScale,
  renderFigure,
} from "./figure.js";

const USAGE = `usage: plot --csv PATH [--csv PATH ...] --out PATH [options]

Render an SVG figure from sweep CSV files.

options:
  --csv PATH        input CSV (repeatable, merged)
  --out PATH        output SVG path
  --kind KIND       ${FIGURE_KINDS.join(" | ")} (default plr-vs-load)
  --group-by KEYS   comma list of ${GROUP_KEYS.join(",")} (default all)
  --y-scale SCALE   log | linear (default: log for plr-vs-load)
  --width N         figure width in px (default 900)
  --height N        figure height in px (default 600)
  -h, --help        show this help
`;

function parsePixels(name: string, raw: string): number {
  const value = Number(raw);
  if (!Number.isInteger(value) || value <= 0) {
    throw new FigureError(`--${name} must be a positive integer, got ${raw}`);
  }
  return value;
}

export function main(argv: string[]): number {
  let values;
  let positionals;
  try {
    ({ values, positionals } = parseArgs({
      args: argv,
      options: {
        csv: { type: "string", multiple: true },
        out: { type: "string" },
        kind: { type: "string", default: "plr-vs-load" },
        "group-by": { type: "string", default: GROUP_KEYS.join(",") },
        "y-scale": { type: "string" },
        width: { type: "string", default: "900" },
        height: { type: "string", default: "600" },
        help: { type: "boolean", short: "h", default: false },
      },
      allowPositionals: true,
    }));
  } catch (err) {
    process.stderr.write(`${(err as Error).message}\n${USAGE}`);
    return 2;
  }
  if (values.help) {
    process.stdout.write(USAGE);
    return 0;
  }

  try {
    if (positionals.length > 0) {
      throw new FigureError(`unexpected argument: ${positionals[0]}`);
    }
    if (!values.csv || values.csv.length === 0) throw new FigureError("--csv is required");
    if (!values.out) throw new FigureError("--out is required");
    const kind = values.kind as FigureKind;
    if (!FIGURE_KINDS.includes(kind)) {
      throw new FigureError(`unknown figure kind: ${values.kind} (allowed: ${FIGURE_KINDS.join(", ")})`);
    }
    if (values["y-scale"] !== undefined && !["log", "linear"].includes(values["y-scale"])) {
      throw new FigureError(`--y-scale must be log or linear, got ${values["y-scale"]}`);
    }

    const out = renderFigure({
      csvPaths: values.csv,
      kind,
      outPath: values.out,
      groupBy: values["group-by"].split(",").map((s) => s.trim()) as GroupKey[],
      yScale: values["y-scale"] as YScale | undefined,
      width: parsePixels("width", values.width),
      height: parsePixels("height", values.height),
    });
    process.stdout.write(`wrote ${out}\n`);
    return 0;
  } catch (err) {
    if (err instanceof FigureError || err instanceof ContractError) {
      process.stderr.write(`error: ${err.message}\n`);
      return 2;
    }
    if (err instanceof Error && "code" in err && err.code === "ENOENT") {
      process.stderr.write(`error: ${err.message}\n`);
      return 2;
    }
    process.stderr.write(`error: ${err instanceof Error ? err.stack ?? err.message : String(err)}\n`);
    return 1;
  }
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
