/** Minimal strict CSV handling for the unigate output schemas. */

export interface CsvDoc {
  header: string[];
  rows: string[][];
}

export class SchemaError extends Error {}

export function parseCsv(text: string): CsvDoc {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaError("empty CSV: no header row");
  }
  const header = lines[0].split(",");
  const rows = lines.slice(1).map((line, i) => {
    const cells = line.split(",");
    if (cells.length !== header.length) {
      throw new SchemaError(
        `row ${i + 1} has ${cells.length} cells, header has ${header.length}`,
      );
    }
    return cells;
  });
  return { header, rows };
}

/** Column indices for the expected names, with a diagnostic on mismatch. */
export function requireColumns(doc: CsvDoc, expected: string[], context: string): number[] {
  const missing = expected.filter((name) => !doc.header.includes(name));
  if (missing.length > 0) {
    throw new SchemaError(
      `${context}: missing column(s) ${missing.join(", ")}; ` +
        `expected ${expected.join(",")} but file has ${doc.header.join(",")}`,
    );
  }
  if (doc.rows.length === 0) {
    throw new SchemaError(`${context}: no data rows`);
  }
  return expected.map((name) => doc.header.indexOf(name));
}

export function numericColumn(doc: CsvDoc, index: number, context: string): number[] {
  return doc.rows.map((row, i) => {
    const value = Number(row[index]);
    if (!Number.isFinite(value)) {
      throw new SchemaError(`${context}: row ${i + 1} column ${doc.header[index]} is not numeric`);
    }
    return value;
  });
}
