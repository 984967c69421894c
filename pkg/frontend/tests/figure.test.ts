import { describe, expect, it } from "vitest";
import type { SweepRow } from "../src/csv.js";
import { FigureError, buildFigureOption, groupRows } from "../src/figure.js";

function mkRow(over: Partial<SweepRow> = {}): SweepRow {
  return {
    g: 0.4,
    k: 1,
    epsilon: 0.05,
    n: 1000,
    dist: "x^2",
    frames: 100,
    users_total: 40000,
    users_decoded: 38000,
    plr: 0.05,
    plr_ci_low: 0.048,
    plr_ci_high: 0.052,
    plr_bound: 0.0501,
    p_eps: 1e-25,
    throughput: 0.38,
    eta: 0.38,
    ...over,
  };
}

function sweep(): SweepRow[] {
  const rows: SweepRow[] = [];
  for (const k of [1, 2]) {
    for (const g of [0.4, 0.8, 1.2]) {
      rows.push(mkRow({ g, k, plr: 0.05 * g * k, plr_bound: 0.04 * g }));
      rows.push(
        mkRow({ g, k, frames: 0, users_total: 0, users_decoded: 0, plr: 0.04 * g, plr_bound: 0.04 * g }),
      );
    }
  }
  return rows;
}

type AnySeries = { name?: unknown; type?: unknown; data?: unknown; lineStyle?: { type?: unknown } };

function seriesOf(option: ReturnType<typeof buildFigureOption>): AnySeries[] {
  return option.series as AnySeries[];
}

describe("groupRows", () => {
  it("labels only the keys that vary", () => {
    const groups = groupRows(sweep(), ["k", "epsilon", "dist"]);
    expect(groups.map((g) => g.label)).toEqual(["k=1", "k=2"]);
    expect(groups[0]!.simulated).toHaveLength(3);
    expect(groups[0]!.analyzed).toHaveLength(3);
  });

  it("uses an empty label when nothing varies", () => {
    const groups = groupRows([mkRow(), mkRow({ g: 0.8 })], ["k", "epsilon", "dist"]);
    expect(groups).toHaveLength(1);
    expect(groups[0]!.label).toBe("");
  });

  it("orders groups by key value", () => {
    const rows = [mkRow({ k: 4 }), mkRow({ k: 1 }), mkRow({ k: 10 })];
    expect(groupRows(rows, ["k"]).map((g) => g.label)).toEqual(["k=1", "k=4", "k=10"]);
  });

  it("rejects unknown grouping keys", () => {
    expect(() => groupRows([mkRow()], ["frames" as never])).toThrow(FigureError);
  });
});

describe("buildFigureOption", () => {
  it("emits a marker/dashed pair per k on a log axis", () => {
    const option = buildFigureOption(sweep(), "plr-vs-load");
    const series = seriesOf(option);
    expect(series.map((s) => `${s.name}:${s.type}`)).toEqual([
      "k=1 simulated:scatter",
      "k=1 bound:line",
      "k=2 simulated:scatter",
      "k=2 bound:line",
    ]);
    for (const s of series.filter((x) => x.type === "line")) {
      expect(s.lineStyle?.type).toBe("dashed");
    }
    expect((option.yAxis as { type?: string }).type).toBe("log");
  });

  it("sorts series data by load and picks the right columns", () => {
    const rows = [
      mkRow({ g: 1.2, plr: 0.3 }),
      mkRow({ g: 0.4, plr: 0.01 }),
      mkRow({ g: 1.2, frames: 0, plr: 0.28, plr_bound: 0.28 }),
      mkRow({ g: 0.4, frames: 0, plr: 0.008, plr_bound: 0.008 }),
    ];
    const series = seriesOf(buildFigureOption(rows, "plr-vs-load"));
    expect(series[0]!.data).toEqual([
      [0.4, 0.01],
      [1.2, 0.3],
    ]);
    expect(series[1]!.data).toEqual([
      [0.4, 0.008],
      [1.2, 0.28],
    ]);
  });

  it("falls back to the bound column when the CSV is simulation-only", () => {
    const rows = [mkRow({ g: 0.4 }), mkRow({ g: 0.8 })];
    const series = seriesOf(buildFigureOption(rows, "plr-vs-load"));
    expect(series.map((s) => s.name)).toEqual(["simulated", "bound"]);
    expect(series[1]!.data).toEqual([
      [0.4, 0.0501],
      [0.8, 0.0501],
    ]);
  });

  it("drops nonpositive points on a log axis", () => {
    const rows = [mkRow({ g: 0.4, plr: 0.0 }), mkRow({ g: 0.8, plr: 0.02 })];
    const series = seriesOf(buildFigureOption(rows, "plr-vs-load"));
    expect(series[0]!.data).toEqual([[0.8, 0.02]]);
  });

  it("keeps zeros on a linear axis", () => {
    const rows = [mkRow({ g: 0.4, plr: 0.0 }), mkRow({ g: 0.8, plr: 0.02 })];
    const series = seriesOf(buildFigureOption(rows, "plr-vs-load", ["k"], "linear"));
    expect(series[0]!.data).toEqual([
      [0.4, 0.0],
      [0.8, 0.02],
    ]);
    expect((buildFigureOption(rows, "plr-vs-load", ["k"], "linear").yAxis as { type?: string }).type).toBe(
      "value",
    );
  });

  it("plots eta on a linear axis by default", () => {
    const rows = [
      mkRow({ g: 0.4, eta: 0.37 }),
      mkRow({ g: 0.4, frames: 0, eta: 0.39 }),
    ];
    const option = buildFigureOption(rows, "eta-vs-load");
    expect((option.yAxis as { type?: string }).type).toBe("value");
    const series = seriesOf(option);
    expect(series[0]!.data).toEqual([[0.4, 0.37]]);
    expect(series[1]!.data).toEqual([[0.4, 0.39]]);
  });

  it("omits the analytical eta series when only simulation rows exist", () => {
    const series = seriesOf(buildFigureOption([mkRow()], "eta-vs-load"));
    expect(series.map((s) => s.name)).toEqual(["simulated"]);
  });

  it("rejects an empty row set", () => {
    expect(() => buildFigureOption([], "plr-vs-load")).toThrow(/empty selection/);
  });

  it("rejects data with nothing plottable on a log axis", () => {
    const rows = [mkRow({ plr: 0.0, plr_bound: 0.0 })];
    expect(() => buildFigureOption(rows, "plr-vs-load")).toThrow(/empty selection/);
  });

  it("rejects an unknown kind", () => {
    expect(() => buildFigureOption([mkRow()], "plr-vs-time" as never)).toThrow(/unknown figure kind/);
  });

  it("builds identically on repeat calls", () => {
    const rows = sweep();
    expect(buildFigureOption(rows, "plr-vs-load")).toEqual(buildFigureOption(rows, "plr-vs-load"));
  });
});
