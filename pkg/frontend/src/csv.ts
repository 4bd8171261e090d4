/**
 * Parsers for the three documented CSV schemas (region, survey, decay).
 *
 * Schema violations throw SchemaError naming the offending column or header
 * field; the renderers never recompute any spectral quantity, they only read
 * what the producing tool wrote.
 */

export class SchemaError extends Error {}

/** Minimal quote-aware CSV: double quotes wrap fields, "" escapes a quote. */
export function parseCsv(text: string): string[][] {
  const rows: string[][] = [];
  let row: string[] = [];
  let field = "";
  let inQuotes = false;
  let sawAny = false;
  for (let i = 0; i < text.length; i++) {
    const ch = text[i];
    if (inQuotes) {
      if (ch === '"') {
        if (text[i + 1] === '"') {
          field += '"';
          i++;
        } else {
          inQuotes = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    if (ch === '"') {
      inQuotes = true;
      sawAny = true;
    } else if (ch === ",") {
      row.push(field);
      field = "";
      sawAny = true;
    } else if (ch === "\n") {
      row.push(field);
      rows.push(row);
      row = [];
      field = "";
      sawAny = false;
    } else if (ch !== "\r") {
      field += ch;
      sawAny = true;
    }
  }
  if (sawAny || field.length > 0 || row.length > 0) {
    row.push(field);
    rows.push(row);
  }
  return rows;
}

/** Parse a `key=value,key=value` metadata line into a map. */
export function parseMeta(line: string): Map<string, string> {
  const meta = new Map<string, string>();
  for (const part of line.split(",")) {
    const eq = part.indexOf("=");
    if (eq < 0) continue;
    meta.set(part.slice(0, eq), part.slice(eq + 1));
  }
  return meta;
}

function requireColumns(header: string[], needed: string[], kind: string): Map<string, number> {
  const index = new Map<string, number>();
  header.forEach((name, i) => index.set(name, i));
  for (const name of needed) {
    if (!index.has(name)) {
      throw new SchemaError(`${kind} CSV is missing column '${name}'`);
    }
  }
  return index;
}

function numberAt(row: string[], idx: number, column: string, kind: string): number {
  const value = Number(row[idx]);
  if (!Number.isFinite(value)) {
    throw new SchemaError(`${kind} CSV has non-numeric value '${row[idx]}' in column '${column}'`);
  }
  return value;
}

export interface RegionPoint {
  sigma: string;
  re: number;
  im: number;
  modulus: number;
  inRegion: boolean;
  activeConstraint: string;
}

export interface RegionData {
  n: number;
  points: RegionPoint[];
}

export function parseRegionCsv(text: string): RegionData {
  const rows = parseCsv(text);
  if (rows.length < 2) {
    throw new SchemaError("region CSV needs a metadata line and a column header");
  }
  const meta = parseMeta(rows[0].join(","));
  const n = Number(meta.get("N"));
  if (!Number.isInteger(n) || n < 3 || n % 2 === 0) {
    throw new SchemaError("region CSV header must carry an odd N >= 3, e.g. 'N=5'");
  }
  const header = rows[1];
  const idx = requireColumns(
    header,
    ["N", "sigma", "re", "im", "modulus", "in_region", "active_constraint"],
    "region",
  );
  const points: RegionPoint[] = [];
  for (const row of rows.slice(2)) {
    if (row.length === 1 && row[0] === "") continue;
    points.push({
      sigma: row[idx.get("sigma")!],
      re: numberAt(row, idx.get("re")!, "re", "region"),
      im: numberAt(row, idx.get("im")!, "im", "region"),
      modulus: numberAt(row, idx.get("modulus")!, "modulus", "region"),
      inRegion: row[idx.get("in_region")!] === "true",
      activeConstraint: row[idx.get("active_constraint")!],
    });
  }
  return { n, points };
}

export interface SurveyRow {
  m: number;
  n: number;
  signature: string;
  mode: string;
  strategy: string;
  value: number;
}

export function parseSurveyCsv(text: string): SurveyRow[] {
  const rows = parseCsv(text);
  if (rows.length < 1) {
    throw new SchemaError("survey CSV needs a column header");
  }
  const idx = requireColumns(
    rows[0],
    ["m", "N", "signature", "mode", "strategy", "value"],
    "survey",
  );
  const out: SurveyRow[] = [];
  for (const row of rows.slice(1)) {
    if (row.length === 1 && row[0] === "") continue;
    out.push({
      m: numberAt(row, idx.get("m")!, "m", "survey"),
      n: numberAt(row, idx.get("N")!, "N", "survey"),
      signature: row[idx.get("signature")!],
      mode: row[idx.get("mode")!],
      strategy: row[idx.get("strategy")!],
      value: numberAt(row, idx.get("value")!, "value", "survey"),
    });
  }
  return out;
}

export interface DecayRow {
  n: number;
  exact: number;
  mc: number;
  mcSe: number;
}

export interface DecayData {
  description: string;
  fittedRate: number | null;
  rows: DecayRow[];
}

export function parseDecayCsv(text: string): DecayData {
  const rows = parseCsv(text);
  if (rows.length < 2) {
    throw new SchemaError("decay CSV needs a metadata line and a column header");
  }
  const meta = parseMeta(rows[0].join(","));
  if (!meta.has("g")) {
    throw new SchemaError("decay CSV header must carry the map description field 'g'");
  }
  const fitted = meta.has("fitted_rate") ? Number(meta.get("fitted_rate")) : null;
  const idx = requireColumns(rows[1], ["n", "C_exact", "C_mc", "mc_se"], "decay");
  const out: DecayRow[] = [];
  for (const row of rows.slice(2)) {
    if (row.length === 1 && row[0] === "") continue;
    out.push({
      n: numberAt(row, idx.get("n")!, "n", "decay"),
      exact: numberAt(row, idx.get("C_exact")!, "C_exact", "decay"),
      mc: numberAt(row, idx.get("C_mc")!, "C_mc", "decay"),
      mcSe: numberAt(row, idx.get("mc_se")!, "mc_se", "decay"),
    });
  }
  return { description: meta.get("g") ?? "", fittedRate: fitted, rows: out };
}
