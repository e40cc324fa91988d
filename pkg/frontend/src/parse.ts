/** Parsers for the run-directory files written by the simulation
 * package: events.ndjson (one JSON object per interaction) and
 * snapshots.csv (one row per constant region per snapshot time).
 * Every parse failure carries the 1-based line number. */

export class ParseError extends Error {
  constructor(public file: string, public line: number, message: string) {
    super(`${file}:${line}: ${message}`);
    this.name = "ParseError";
  }
}

export interface EventRecord {
  t: number;
  x: number;
  case: string;
  in_ids: number[];
  out_ids: number[];
  dS: number;
  dB: number;
  dL: number;
  q_factor: number;
  L_after: number;
  Q_after: number;
}

export interface SnapshotRow {
  t: number;
  xLeft: number; // -Infinity on the leftmost region
  w: number;
  tau: number;
  v: number;
  aLeft: number;
}

const EVENT_KEYS: (keyof EventRecord)[] = [
  "t", "x", "case", "in_ids", "out_ids", "dS", "dB", "dL",
  "q_factor", "L_after", "Q_after",
];

function requireFinite(value: unknown, file: string, line: number,
                       key: string): number {
  if (typeof value !== "number" || !Number.isFinite(value)) {
    throw new ParseError(file, line, `field ${key} is not a finite number`);
  }
  return value;
}

export function parseEvents(text: string, file = "events.ndjson"): EventRecord[] {
  const records: EventRecord[] = [];
  const lines = text.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i].trim();
    if (line === "") continue;
    let obj: Record<string, unknown>;
    try {
      obj = JSON.parse(line);
    } catch (err) {
      throw new ParseError(file, i + 1, `invalid JSON (${err})`);
    }
    for (const key of EVENT_KEYS) {
      if (!(key in obj)) {
        throw new ParseError(file, i + 1, `missing field ${key}`);
      }
    }
    if (typeof obj.case !== "string") {
      throw new ParseError(file, i + 1, "field case is not a string");
    }
    for (const key of ["in_ids", "out_ids"]) {
      const ids = obj[key];
      if (!Array.isArray(ids) || ids.some((v) => !Number.isInteger(v))) {
        throw new ParseError(file, i + 1, `field ${key} is not an id list`);
      }
    }
    records.push({
      t: requireFinite(obj.t, file, i + 1, "t"),
      x: requireFinite(obj.x, file, i + 1, "x"),
      case: obj.case,
      in_ids: obj.in_ids as number[],
      out_ids: obj.out_ids as number[],
      dS: requireFinite(obj.dS, file, i + 1, "dS"),
      dB: requireFinite(obj.dB, file, i + 1, "dB"),
      dL: requireFinite(obj.dL, file, i + 1, "dL"),
      q_factor: requireFinite(obj.q_factor, file, i + 1, "q_factor"),
      L_after: requireFinite(obj.L_after, file, i + 1, "L_after"),
      Q_after: requireFinite(obj.Q_after, file, i + 1, "Q_after"),
    });
  }
  return records;
}

function parseReal(token: string, file: string, line: number,
                   key: string): number {
  if (token === "-inf") return -Infinity;
  if (token === "inf") return Infinity;
  const value = Number(token);
  if (token.trim() === "" || Number.isNaN(value)) {
    throw new ParseError(file, line, `column ${key} is not a number`);
  }
  return value;
}

const SNAPSHOT_HEADER = "t,x_left,w,tau,v,a_left";

/** Snapshot rows grouped by time, in file order (time-sorted, each
 * group left to right). */
export function parseSnapshots(
  text: string, file = "snapshots.csv",
): Map<number, SnapshotRow[]> {
  const lines = text.split("\n");
  if (lines.length === 0 || lines[0].trim() !== SNAPSHOT_HEADER) {
    throw new ParseError(file, 1, `expected header ${SNAPSHOT_HEADER}`);
  }
  const byTime = new Map<number, SnapshotRow[]>();
  for (let i = 1; i < lines.length; i++) {
    const line = lines[i].trim();
    if (line === "") continue;
    const parts = line.split(",");
    if (parts.length !== 6) {
      throw new ParseError(file, i + 1, `expected 6 columns, got ${parts.length}`);
    }
    const row: SnapshotRow = {
      t: parseReal(parts[0], file, i + 1, "t"),
      xLeft: parseReal(parts[1], file, i + 1, "x_left"),
      w: parseReal(parts[2], file, i + 1, "w"),
      tau: parseReal(parts[3], file, i + 1, "tau"),
      v: parseReal(parts[4], file, i + 1, "v"),
      aLeft: parseReal(parts[5], file, i + 1, "a_left"),
    };
    if (row.tau <= 0) {
      throw new ParseError(file, i + 1, "tau must be positive");
    }
    const group = byTime.get(row.t);
    if (group === undefined) {
      byTime.set(row.t, [row]);
    } else {
      group.push(row);
    }
  }
  for (const [t, rows] of byTime) {
    if (rows[0].xLeft !== -Infinity) {
      throw new ParseError(file, 1,
        `snapshot at t=${t} does not start with an unbounded region`);
    }
  }
  return byTime;
}

export interface ConvergencePoint {
  delta: number;
  error: number;
}

const CONVERGENCE_HEADER = "delta,l1_error";

export function parseConvergence(
  text: string, file = "convergence.csv",
): ConvergencePoint[] {
  const lines = text.split("\n");
  if (lines.length === 0 || lines[0].trim() !== CONVERGENCE_HEADER) {
    throw new ParseError(file, 1, `expected header ${CONVERGENCE_HEADER}`);
  }
  const points: ConvergencePoint[] = [];
  for (let i = 1; i < lines.length; i++) {
    const line = lines[i].trim();
    if (line === "") continue;
    const parts = line.split(",");
    if (parts.length !== 2) {
      throw new ParseError(file, i + 1, `expected 2 columns, got ${parts.length}`);
    }
    const delta = parseReal(parts[0], file, i + 1, "delta");
    const error = parseReal(parts[1], file, i + 1, "l1_error");
    if (delta <= 0 || error <= 0) {
      throw new ParseError(file, i + 1, "log-log plot needs positive values");
    }
    points.push({ delta, error });
  }
  return points;
}
