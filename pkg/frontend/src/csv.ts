/**
 * CSV reader for quasistab outputs.
 *
 * Files carry leading `# key=value` metadata lines, a fixed header row, and
 * comma-separated data rows (LF line endings, no quoting needed).
 */

import { readFileSync } from "fs";

export interface CsvTable {
  path: string;
  meta: Record<string, string>;
  header: string[];
  rows: string[][];
}

export function parseCsv(path: string): CsvTable {
  const text = readFileSync(path, "utf-8");
  const meta: Record<string, string> = {};
  let header: string[] | null = null;
  const rows: string[][] = [];
  for (const raw of text.split("\n")) {
    const line = raw.trimEnd();
    if (!line) continue;
    if (line.startsWith("#")) {
      const body = line.slice(1).trim();
      const eq = body.indexOf("=");
      if (eq > 0) meta[body.slice(0, eq)] = body.slice(eq + 1);
      continue;
    }
    if (header === null) {
      header = line.split(",");
    } else {
      rows.push(line.split(","));
    }
  }
  if (header === null || rows.length === 0) {
    throw new Error(`empty CSV: ${path} carries no data rows`);
  }
  return { path, meta, header, rows };
}

export function columnIndex(table: CsvTable, name: string): number {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new Error(
      `column "${name}" missing in ${table.path} (columns: ${table.header.join(", ")})`,
    );
  }
  return idx;
}

export function hasColumn(table: CsvTable, name: string): boolean {
  return table.header.includes(name);
}

/** Numeric column values; empty cells become null, anything else must parse. */
export function numericColumn(table: CsvTable, name: string): (number | null)[] {
  const idx = columnIndex(table, name);
  return table.rows.map((row) => {
    const cell = row[idx] ?? "";
    if (cell === "") return null;
    const value = Number(cell);
    if (!Number.isFinite(value)) {
      throw new Error(`non-numeric cell "${cell}" in column "${name}" of ${table.path}`);
    }
    return value;
  });
}

/** Row indices grouped by the values of a column, insertion-ordered. */
export function groupRows(table: CsvTable, column: string): Map<string, number[]> {
  const idx = columnIndex(table, column);
  const groups = new Map<string, number[]>();
  table.rows.forEach((row, i) => {
    const key = row[idx] ?? "";
    const bucket = groups.get(key);
    if (bucket) bucket.push(i);
    else groups.set(key, [i]);
  });
  return groups;
}

/** Provenance fields for the figure footer, in a fixed order. */
export function provenance(tables: CsvTable[]): string {
  const keys = ["epsilon", "phi", "seed", "trials"];
  const parts: string[] = [];
  for (const table of tables) {
    const bits = keys
      .filter((k) => table.meta[k] !== undefined)
      .map((k) => `${k}=${table.meta[k]}`);
    const name = table.path.split("/").pop();
    if (bits.length > 0) parts.push(`${name}: ${bits.join(" ")}`);
  }
  return parts.join("  |  ");
}
