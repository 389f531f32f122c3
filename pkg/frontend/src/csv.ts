/**
 * Parsing and validation of meanforce sweep CSVs.
 *
 * Two schemas exist: thermal sweeps and entropy-production sweeps. Values are
 * plain decimal floats (shortest round-trip form); string columns are model,
 * coupling and flags. Every diagnostic names the exact deficiency so a broken
 * pipeline is debuggable from the error message alone.
 */

export const THERMAL_COLUMNS = [
  "model", "coupling", "lambda", "n_fock", "T", "beta",
  "U_S", "dU_S", "Q", "K", "S_S", "C_S", "C_direct", "dET",
  "snr_bound", "snr_opt", "F_beta",
  "ergotropy_total", "ergotropy_coherent", "ergotropy_incoherent", "flags",
] as const;

export const EP_COLUMNS = [
  "model", "coupling", "lambda", "n_fock", "T", "t", "Sigma", "mutual_info", "flags",
] as const;

const STRING_COLUMNS = new Set(["model", "coupling", "flags"]);

export type CsvKind = "thermal" | "entropy-production";

export interface CsvTable {
  path: string;
  kind: CsvKind;
  header: string[];
  rows: Record<string, number | string>[];
}

export class CsvError extends Error {}

function detectKind(path: string, header: string[]): CsvKind {
  const set = new Set(header);
  if (THERMAL_COLUMNS.every((c) => set.has(c))) return "thermal";
  if (EP_COLUMNS.every((c) => set.has(c))) return "entropy-production";
  const missingThermal = THERMAL_COLUMNS.filter((c) => !set.has(c));
  const missingEp = EP_COLUMNS.filter((c) => !set.has(c));
  const closer = missingThermal.length <= missingEp.length ? missingThermal : missingEp;
  throw new CsvError(
    `${path}: header matches no known schema; closest schema is missing column(s) ${closer.join(", ")}`,
  );
}

export function parseCsv(path: string, text: string): CsvTable {
  const lines = text.split(/\r?\n/).filter((line) => line.trim().length > 0);
  if (lines.length === 0) {
    throw new CsvError(`${path}: file is empty (no header row)`);
  }
  const header = lines[0].split(",");
  const kind = detectKind(path, header);
  if (lines.length === 1) {
    throw new CsvError(`${path}: header-only file (no data rows)`);
  }
  const rows: Record<string, number | string>[] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== header.length) {
      throw new CsvError(
        `${path}:${i + 1}: row has ${parts.length} fields, header has ${header.length}`,
      );
    }
    const row: Record<string, number | string> = {};
    for (let j = 0; j < header.length; j++) {
      const key = header[j];
      if (STRING_COLUMNS.has(key)) {
        row[key] = parts[j];
      } else {
        const value = parts[j] === "" ? NaN : Number(parts[j]);
        if (parts[j] !== "" && parts[j] !== "nan" && Number.isNaN(value)) {
          throw new CsvError(
            `${path}:${i + 1}: column ${key} has non-numeric value '${parts[j]}'`,
          );
        }
        row[key] = value;
      }
    }
    rows.push(row);
  }
  return { path, kind, header, rows };
}

/** Rows of one model, one coupling label, sorted by temperature. */
export function selectSeries(
  tables: CsvTable[],
  kind: CsvKind,
  model: string,
  coupling: string,
  column: string,
): { x: number[]; y: number[] } {
  const matching = tables.filter((t) => t.kind === kind);
  if (matching.length === 0) {
    throw new CsvError(`no ${kind} CSV among inputs [${tables.map((t) => t.path).join(", ")}]`);
  }
  for (const table of matching) {
    if (!table.header.includes(column)) {
      throw new CsvError(`${table.path}: column ${column} missing from header`);
    }
  }
  const rows = matching
    .flatMap((t) => t.rows)
    .filter((r) => r.model === model && r.coupling === coupling);
  if (rows.length === 0) {
    throw new CsvError(
      `coupling '${coupling}' for model '${model}' not present in ${kind} data`,
    );
  }
  rows.sort((a, b) => (a.T as number) - (b.T as number));
  return { x: rows.map((r) => r.T as number), y: rows.map((r) => r[column] as number) };
}
