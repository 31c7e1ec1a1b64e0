// Reader for the simulator's CSV artifacts: a header row, data rows, and a
// trailing "# {...}" comment line carrying the run summary as JSON.

import { readFileSync } from "fs";
import Papa from "papaparse";

export interface DataTable {
  source: string;
  columns: string[];
  rows: string[][];
  summary: Record<string, unknown> | null;
}

export class SchemaError extends Error {}

function extractSummary(text: string): Record<string, unknown> | null {
  const comments = text.split(/\r?\n/).filter((line) => line.startsWith("# "));
  if (comments.length === 0) return null;
  const last = comments[comments.length - 1].slice(2);
  try {
    return JSON.parse(last);
  } catch {
    return null;
  }
}

export function parseArtifact(text: string, source: string): DataTable {
  const parsed = Papa.parse<string[]>(text, {
    comments: "#",
    delimiter: ",",
    skipEmptyLines: "greedy",
  });
  if (parsed.errors.length > 0) {
    const e = parsed.errors[0];
    throw new SchemaError(`${source}: ${e.message} (row ${e.row})`);
  }
  const grid = parsed.data;
  if (grid.length === 0) {
    throw new SchemaError(`${source}: empty file, no header row`);
  }
  const columns = grid[0];
  const rows = grid.slice(1);
  if (rows.length === 0) {
    throw new SchemaError(`${source}: no data rows`);
  }
  for (const row of rows) {
    if (row.length !== columns.length) {
      throw new SchemaError(
        `${source}: row has ${row.length} cells, header has ${columns.length}`,
      );
    }
  }
  return { source, columns, rows, summary: extractSummary(text) };
}

export function readArtifact(path: string): DataTable {
  return parseArtifact(readFileSync(path, "utf-8"), path);
}

function columnIndex(table: DataTable, column: string): number {
  const index = table.columns.indexOf(column);
  if (index < 0) {
    throw new SchemaError(
      `${table.source}: column "${column}" not found ` +
        `(has: ${table.columns.join(", ")})`,
    );
  }
  return index;
}

// Unstable sweep points leave their value cell empty; those come back null.
export function optionalNumbers(
  table: DataTable,
  column: string,
): Array<number | null> {
  const index = columnIndex(table, column);
  return table.rows.map((row, line) => {
    const cell = row[index];
    if (cell === "") return null;
    const value = Number(cell);
    if (!Number.isFinite(value)) {
      throw new SchemaError(
        `${table.source}: column "${column}" row ${line + 1}: ` +
          `not a number: "${cell}"`,
      );
    }
    return value;
  });
}

export function numbers(table: DataTable, column: string): number[] {
  return optionalNumbers(table, column).map((value, line) => {
    if (value === null) {
      throw new SchemaError(
        `${table.source}: column "${column}" row ${line + 1}: empty cell`,
      );
    }
    return value;
  });
}

export function booleans(table: DataTable, column: string): boolean[] {
  const index = columnIndex(table, column);
  return table.rows.map((row, line) => {
    const cell = row[index];
    if (cell !== "true" && cell !== "false") {
      throw new SchemaError(
        `${table.source}: column "${column}" row ${line + 1}: ` +
          `expected true/false, got "${cell}"`,
      );
    }
    return cell === "true";
  });
}
