import Papa from "papaparse";

/** Column order is part of the producer's CSV contract; do not reorder. */
export const CSV_COLUMNS = [
  "g",
  "k",
  "epsilon",
  "n",
  "dist",
  "frames",
  "users_total",
  "users_decoded",
  "plr",
  "plr_ci_low",
  "plr_ci_high",
  "plr_bound",
  "p_eps",
  "throughput",
  "eta",
] as const;

export type CsvColumn = (typeof CSV_COLUMNS)[number];

/** One sweep point. Field names mirror the CSV header exactly. */
export interface SweepRow {
  g: number;
  k: number;
  epsilon: number;
  n: number;
  dist: string;
  frames: number;
  users_total: number;
  users_decoded: number;
  plr: number;
  plr_ci_low: number;
  plr_ci_high: number;
  plr_bound: number;
  p_eps: number;
  throughput: number;
  eta: number;
}

export class ContractError extends Error {}

const INT_COLUMNS: ReadonlySet<CsvColumn> = new Set([
  "k",
  "n",
  "frames",
  "users_total",
  "users_decoded",
]);

// analysis rows carry frames == 0 by convention
export function isSimulated(row: SweepRow): boolean {
  return row.frames > 0;
}

function toNumber(column: CsvColumn, raw: string, rowIndex: number): number {
  const value = Number(raw);
  if (raw.trim() === "" || !Number.isFinite(value)) {
    throw new ContractError(`row ${rowIndex}: column ${column} is not a number: ${JSON.stringify(raw)}`);
  }
  if (INT_COLUMNS.has(column) && !Number.isInteger(value)) {
    throw new ContractError(`row ${rowIndex}: column ${column} must be an integer, got ${raw}`);
  }
  return value;
}

/**
 * Parse one sweep CSV. The header must match CSV_COLUMNS exactly (same names,
 * same order); anything else means the file was not produced by the sweep
 * tool and silently guessing a mapping would hide that.
 */
export function parseSweepCsv(text: string): SweepRow[] {
  const parsed = Papa.parse<Record<string, string>>(text, {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0]!;
    throw new ContractError(`malformed CSV: ${first.message} (row ${first.row ?? "?"})`);
  }
  const fields = parsed.meta.fields ?? [];
  if (fields.length !== CSV_COLUMNS.length || fields.some((f, i) => f !== CSV_COLUMNS[i])) {
    throw new ContractError(
      `unexpected header: got [${fields.join(",")}], want [${CSV_COLUMNS.join(",")}]`,
    );
  }
  return parsed.data.map((raw, i) => {
    const row: Record<string, number | string> = {};
    for (const column of CSV_COLUMNS) {
      const cell = raw[column];
      if (cell === undefined) {
        throw new ContractError(`row ${i}: missing column ${column}`);
      }
      row[column] = column === "dist" ? cell : toNumber(column, cell, i);
    }
    return row as unknown as SweepRow;
  });
}

export function readSweepCsv(text: string, source: string): SweepRow[] {
  try {
    return parseSweepCsv(text);
  } catch (err) {
    if (err instanceof ContractError) {
      throw new ContractError(`${source}: ${err.message}`);
    }
    throw err;
  }
}
