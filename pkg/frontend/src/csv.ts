import Papa from "papaparse";

const { parse } = Papa;

export const EXPECTED_COLUMNS = [
  "snr_db",
  "ber_bound",
  "ber_sim",
  "stderr_sim",
  "index_bit_errors",
  "symbol_bit_errors",
  "total_bits",
  "blocks",
] as const;

export interface ResultPoint {
  snr_db: number;
  ber_bound: number | null;
  ber_sim: number | null;
  stderr_sim: number | null;
}

export interface ResultFile {
  manifest: Record<string, string>;
  points: ResultPoint[];
}

function manifestOf(text: string): Record<string, string> {
  const manifest: Record<string, string> = {};
  for (const line of text.split("\n")) {
    if (!line.startsWith("#")) break;
    const body = line.slice(1).trim();
    const eq = body.indexOf("=");
    if (eq > 0) manifest[body.slice(0, eq)] = body.slice(eq + 1);
  }
  return manifest;
}

function numOrNull(v: unknown): number | null {
  if (v === null || v === undefined || v === "") return null;
  const x = Number(v);
  if (!Number.isFinite(x)) throw new Error(`non-numeric field: ${String(v)}`);
  return x;
}

/** Parse one result CSV (manifest comments, fixed header, data rows). */
export function parseResultCsv(text: string): ResultFile {
  const parsed = parse<Record<string, string>>(text, {
    header: true,
    comments: "#",
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new Error(`CSV parse error: ${parsed.errors[0].message}`);
  }
  const fields = parsed.meta.fields ?? [];
  for (const col of EXPECTED_COLUMNS) {
    if (!fields.includes(col)) {
      throw new Error(`missing column '${col}' in CSV header`);
    }
  }
  if (parsed.data.length === 0) {
    throw new Error("CSV contains no data rows");
  }
  const points: ResultPoint[] = parsed.data.map((row) => {
    const snr = numOrNull(row.snr_db);
    if (snr === null) throw new Error("row without snr_db value");
    return {
      snr_db: snr,
      ber_bound: numOrNull(row.ber_bound),
      ber_sim: numOrNull(row.ber_sim),
      stderr_sim: numOrNull(row.stderr_sim),
    };
  });
  return { manifest: manifestOf(text), points };
}
