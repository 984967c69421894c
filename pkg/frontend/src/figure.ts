import { readFileSync, writeFileSync } from "node:fs";
import type { EChartsOption, SeriesOption } from "echarts";
import { ContractError, SweepRow, isSimulated, readSweepCsv } from "./csv.js";
import { renderSvg } from "./render.js";

export type FigureKind = "plr-vs-load" | "eta-vs-load";
export type YScale = "log" | "linear";
export type GroupKey = "k" | "epsilon" | "dist";

export const FIGURE_KINDS: readonly FigureKind[] = ["plr-vs-load", "eta-vs-load"];
export const GROUP_KEYS: readonly GroupKey[] = ["k", "epsilon", "dist"];

export interface FigureSpec {
  csvPaths: string[];
  kind: FigureKind;
  outPath: string;
  /** Series grouping keys; defaults to every key in GROUP_KEYS. */
  groupBy?: GroupKey[];
  /** Defaults to log for loss-rate figures, linear otherwise. */
  yScale?: YScale;
  width?: number;
  height?: number;
}

export class FigureError extends Error {}

interface SeriesGroup {
  label: string;
  simulated: SweepRow[];
  analyzed: SweepRow[];
}

function checkGroupBy(groupBy: readonly string[]): asserts groupBy is GroupKey[] {
  for (const key of groupBy) {
    if (!(GROUP_KEYS as readonly string[]).includes(key)) {
      throw new FigureError(`unknown grouping key: ${key} (allowed: ${GROUP_KEYS.join(", ")})`);
    }
  }
}

function compareValues(a: number | string, b: number | string): number {
  if (typeof a === "number" && typeof b === "number") return a - b;
  return String(a) < String(b) ? -1 : String(a) > String(b) ? 1 : 0;
}

/**
 * Split rows into series groups. The label spells out only the grouping keys
 * that actually vary across the input, so a single-k sweep is labeled plainly
 * while a multi-k sweep gets "k=1", "k=2", ...
 */
export function groupRows(rows: SweepRow[], groupBy: readonly GroupKey[]): SeriesGroup[] {
  checkGroupBy(groupBy);
  const varying = groupBy.filter((key) => new Set(rows.map((r) => r[key])).size > 1);
  const byKey = new Map<string, { values: (number | string)[]; group: SeriesGroup }>();
  for (const row of rows) {
    const values = groupBy.map((key) => row[key]);
    const id = JSON.stringify(values);
    let entry = byKey.get(id);
    if (!entry) {
      const label = varying.map((key) => `${key}=${row[key]}`).join(" ");
      entry = { values, group: { label, simulated: [], analyzed: [] } };
      byKey.set(id, entry);
    }
    (isSimulated(row) ? entry.group.simulated : entry.group.analyzed).push(row);
  }
  return [...byKey.values()]
    .sort((a, b) => {
      for (let i = 0; i < a.values.length; i++) {
        const c = compareValues(a.values[i]!, b.values[i]!);
        if (c !== 0) return c;
      }
      return 0;
    })
    .map((entry) => entry.group);
}

function yValue(row: SweepRow, kind: FigureKind, simulated: boolean): number {
  if (kind === "eta-vs-load") return row.eta;
  return simulated ? row.plr : row.plr_bound;
}

function points(
  rows: SweepRow[],
  kind: FigureKind,
  simulated: boolean,
  logY: boolean,
): [number, number][] {
  const pts = rows
    .slice()
    .sort((a, b) => a.g - b.g)
    .map((row): [number, number] => [row.g, yValue(row, kind, simulated)]);
  // a log axis cannot place zeros; drop them rather than refuse the figure
  return logY ? pts.filter(([, y]) => y > 0) : pts;
}

const PALETTE = ["#4c78a8", "#e45756", "#59a14f", "#f28e2b", "#b279a2", "#76b7b2"];

export function buildFigureOption(
  rows: SweepRow[],
  kind: FigureKind,
  groupBy: readonly GroupKey[] = GROUP_KEYS,
  yScale?: YScale,
): EChartsOption {
  if (!FIGURE_KINDS.includes(kind)) {
    throw new FigureError(`unknown figure kind: ${kind} (allowed: ${FIGURE_KINDS.join(", ")})`);
  }
  if (rows.length === 0) {
    throw new FigureError("empty selection: no rows to plot");
  }
  const logY = (yScale ?? (kind === "plr-vs-load" ? "log" : "linear")) === "log";
  const yName = kind === "plr-vs-load" ? "packet loss rate" : "energy efficiency";

  const series: SeriesOption[] = [];
  const groups = groupRows(rows, groupBy);
  groups.forEach((group, i) => {
    const color = PALETTE[i % PALETTE.length]!;
    const prefix = group.label === "" ? "" : `${group.label} `;
    const sim = points(group.simulated, kind, true, logY);
    if (sim.length > 0) {
      series.push({
        name: `${prefix}simulated`,
        type: "scatter",
        symbol: "circle",
        symbolSize: 9,
        itemStyle: { color },
        data: sim,
      });
    }
    // loss-rate figures can fall back to the bound column simulation rows
    // carry, so a sim-only CSV still shows the analytical floor
    const boundRows =
      group.analyzed.length > 0
        ? group.analyzed
        : kind === "plr-vs-load"
          ? group.simulated.map((row) => ({ ...row, frames: 0 }))
          : [];
    const bound = points(boundRows, kind, false, logY);
    if (bound.length > 0) {
      series.push({
        name: `${prefix}bound`,
        type: "line",
        symbol: "none",
        lineStyle: { color, type: "dashed", width: 2 },
        itemStyle: { color },
        data: bound,
      });
    }
  });
  if (series.length === 0) {
    throw new FigureError("empty selection: no finite positive values to plot");
  }

  const constants = GROUP_KEYS.filter((key) => new Set(rows.map((r) => r[key])).size === 1)
    .map((key) => `${key}=${rows[0]![key]}`)
    .join("  ");
  return {
    title: { text: yName + " vs channel load", subtext: constants, left: "center" },
    legend: { bottom: 0 },
    grid: { left: 70, right: 30, top: 70, bottom: 60 },
    xAxis: { type: "value", name: "channel load (users/slot)", nameLocation: "middle", nameGap: 28 },
    yAxis: { type: logY ? "log" : "value", name: yName },
    series,
  };
}

/** Read the CSVs, build the figure and write it as SVG. Returns the output path. */
export function renderFigure(spec: FigureSpec): string {
  if (spec.csvPaths.length === 0) {
    throw new FigureError("no input CSVs given");
  }
  const rows: SweepRow[] = [];
  for (const path of spec.csvPaths) {
    rows.push(...readSweepCsv(readFileSync(path, "utf8"), path));
  }
  const option = buildFigureOption(rows, spec.kind, spec.groupBy ?? GROUP_KEYS, spec.yScale);
  const svg = renderSvg(option, spec.width ?? 900, spec.height ?? 600);
  writeFileSync(spec.outPath, svg, "utf8");
  return spec.outPath;
}

export { ContractError };
