/**
 * Strict parsers for the simulator's CSV outputs. Errors always name the
 * offending file and line.
 */

export interface Snapshot {
  /** simulation time parsed from the snap_t<seconds>.csv filename, NaN if absent */
  time: number;
  source: string;
  x: number[];
  n: number[];
  p: number[];
  w: number[];
}

export interface SummaryRow {
  value: number;
  sigmaEst: number;
  jumpEst: number;
  compResidualFinal: number;
  oscMidFinal: number;
  status: string;
}

const SNAPSHOT_HEADER = "x,n,p,W";
const SUMMARY_HEADER = "value,sigma_est,jump_est,comp_residual_final,osc_mid_final,status";

export class CsvError extends Error {}

function fail(source: string, line: number, message: string): never {
  throw new CsvError(`${source}:${line}: ${message}`);
}

function parseNumber(raw: string, source: string, line: number): number {
  const v = Number(raw);
  if (raw.trim() === "" || Number.isNaN(v)) {
    // diagnostics columns may legitimately carry nan
    if (raw.trim() === "nan" || raw.trim() === "-nan") return NaN;
    fail(source, line, `not a number: ${JSON.stringify(raw)}`);
  }
  return v;
}

/** Time embedded in a snapshot filename, e.g. snap_t12.500000.csv -> 12.5 */
export function snapshotTime(path: string): number {
  const m = /snap_t([0-9]+\.[0-9]+)\.csv$/.exec(path);
  return m ? Number(m[1]) : NaN;
}

export function parseSnapshot(text: string, source: string): Snapshot {
  const lines = text.split(/\r?\n/);
  if (lines.length === 0 || lines[0].trim() !== SNAPSHOT_HEADER) {
    fail(source, 1, `expected header ${SNAPSHOT_HEADER}, got ${JSON.stringify(lines[0] ?? "")}`);
  }
  const snap: Snapshot = { time: snapshotTime(source), source, x: [], n: [], p: [], w: [] };
  for (let i = 1; i < lines.length; i++) {
    const line = lines[i].trim();
    if (line === "") continue;
    const parts = line.split(",");
    if (parts.length !== 4) fail(source, i + 1, `expected 4 columns, got ${parts.length}`);
    snap.x.push(parseNumber(parts[0], source, i + 1));
    snap.n.push(parseNumber(parts[1], source, i + 1));
    snap.p.push(parseNumber(parts[2], source, i + 1));
    snap.w.push(parseNumber(parts[3], source, i + 1));
  }
  if (snap.x.length === 0) fail(source, 1, "no data rows");
  return snap;
}

export function parseSummary(text: string, source: string): SummaryRow[] {
  const lines = text.split(/\r?\n/);
  if (lines.length === 0 || lines[0].trim() !== SUMMARY_HEADER) {
    fail(source, 1, `expected header ${SUMMARY_HEADER}, got ${JSON.stringify(lines[0] ?? "")}`);
  }
  const rows: SummaryRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const line = lines[i].trim();
    if (line === "") continue;
    const parts = line.split(",");
    if (parts.length !== 6) fail(source, i + 1, `expected 6 columns, got ${parts.length}`);
    rows.push({
      value: parseNumber(parts[0], source, i + 1),
      sigmaEst: parseNumber(parts[1], source, i + 1),
      jumpEst: parseNumber(parts[2], source, i + 1),
      compResidualFinal: parseNumber(parts[3], source, i + 1),
      oscMidFinal: parseNumber(parts[4], source, i + 1),
      status: parts[5],
    });
  }
  if (rows.length === 0) fail(source, 1, "no data rows");
  return rows;
}

/**
 * Rightmost downward crossing of n = 1/2, linearly interpolated between
 * cell centers; the same front definition the simulator uses.
 */
export function frontPosition(snap: Snapshot): number {
  let i = -1;
  for (let j = 0; j < snap.n.length; j++) {
    if (snap.n[j] >= 0.5) i = j;
  }
  if (i < 0 || i + 1 >= snap.n.length) {
    throw new CsvError(`${snap.source}: no n = 1/2 crossing`);
  }
  const frac = (snap.n[i] - 0.5) / (snap.n[i] - snap.n[i + 1]);
  return snap.x[i] + frac * (snap.x[i + 1] - snap.x[i]);
}
