/** Strict readers for the three exported CSV schemas. */

export interface RasterCell {
  timestep: number;
  pqubit: number;
  state: "I" | "C" | "M";
}

export interface MatrixEntry {
  src: number;
  dst: number;
  count: number;
}

export interface QubitLoad {
  vqubit: number;
  teleports: number;
  intraOps: number;
}

function rows(text: string, expectedHeader: string): string[][] {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0 || lines[0] !== expectedHeader) {
    throw new Error(
      `schema mismatch: expected header "${expectedHeader}", got "${lines[0] ?? ""}"`,
    );
  }
  const width = expectedHeader.split(",").length;
  return lines.slice(1).map((line, i) => {
    const fields = line.split(",");
    if (fields.length !== width) {
      throw new Error(`row ${i + 1}: expected ${width} fields, got ${fields.length}`);
    }
    return fields;
  });
}

function int(field: string, where: string): number {
  const n = Number(field);
  if (!Number.isInteger(n) || n < 0) {
    throw new Error(`${where}: expected a non-negative integer, got "${field}"`);
  }
  return n;
}

export function parseRasterCsv(text: string): RasterCell[] {
  return rows(text, "timestep,pqubit,state").map((f, i) => {
    const state = f[2]!;
    if (state !== "I" && state !== "C" && state !== "M") {
      throw new Error(`row ${i + 1}: unknown state "${state}"`);
    }
    return { timestep: int(f[0]!, `row ${i + 1}`), pqubit: int(f[1]!, `row ${i + 1}`), state };
  });
}

export function parseMatrixCsv(text: string): MatrixEntry[] {
  return rows(text, "src,dst,count").map((f, i) => ({
    src: int(f[0]!, `row ${i + 1}`),
    dst: int(f[1]!, `row ${i + 1}`),
    count: int(f[2]!, `row ${i + 1}`),
  }));
}

export function parseQubitCsv(text: string): QubitLoad[] {
  return rows(text, "vqubit,teleports,intra_ops").map((f, i) => ({
    vqubit: int(f[0]!, `row ${i + 1}`),
    teleports: int(f[1]!, `row ${i + 1}`),
    intraOps: int(f[2]!, `row ${i + 1}`),
  }));
}
