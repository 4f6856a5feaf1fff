import fs from "fs";

/** The CSV is not a table this package can plot. */
export class SchemaMismatch extends Error {}

export interface Table {
  header: string[];
  columns: Map<string, Float64Array>;
  rows: number;
}

/**
 * Parse a strictly numeric CSV: one header row, >= 2 data rows, every cell a
 * finite number. The producer writes LF endings and no quoting, so a plain
 * split is exact here.
 */
export function parseCsv(text: string): Table {
  const lines = text.split("\n");
  while (lines.length > 0 && lines[lines.length - 1] === "") lines.pop();
  if (lines.length === 0) throw new SchemaMismatch("empty file");
  const header = lines[0].split(",").map((h) => h.trim());
  if (header.some((h) => h === "")) throw new SchemaMismatch("blank column name in header");
  if (new Set(header).size !== header.length) {
    throw new SchemaMismatch("duplicate column name in header");
  }
  const rows = lines.length - 1;
  if (rows < 2) throw new SchemaMismatch(`need at least 2 data rows to plot, got ${rows}`);
  const cols = header.map(() => new Float64Array(rows));
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== header.length) {
      throw new SchemaMismatch(
        `row ${i} has ${cells.length} fields, header has ${header.length}`
      );
    }
    for (let j = 0; j < cells.length; j++) {
      // Number("") is 0, so the empty check must come first.
      const v = Number(cells[j]);
      if (cells[j].trim() === "" || !Number.isFinite(v)) {
        throw new SchemaMismatch(
          `row ${i}, column ${header[j]}: not a finite number: ${JSON.stringify(cells[j])}`
        );
      }
      cols[j][i - 1] = v;
    }
  }
  const columns = new Map<string, Float64Array>();
  header.forEach((h, j) => columns.set(h, cols[j]));
  return { header, columns, rows };
}

export function readTable(path: string): Table {
  return parseCsv(fs.readFileSync(path, "utf8"));
}

export function requireColumn(table: Table, name: string): Float64Array {
  const col = table.columns.get(name);
  if (!col) throw new SchemaMismatch(`missing column ${name}`);
  return col;
}
