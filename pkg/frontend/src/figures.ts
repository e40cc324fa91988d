/** The four figures, each built purely from parsed run-directory data:
 * a space-time front diagram, the functional time series, the weight
 * heatmap, and the grid-convergence plot. */

import type { ConvergencePoint, EventRecord, SnapshotRow } from "./parse.js";
import {
  axes, circle, document, fmt, line, linearScale, polyline, rect, text,
} from "./svg.js";

const WIDTH = 860;
const HEIGHT = 560;
const MARGIN = { left: 64, right: 190, top: 28, bottom: 48 };

const LABEL_COLORS: Record<string, string> = {
  "1-shock": "#d62728",
  "2-shock": "#9467bd",
  "1-rarefaction": "#1f77b4",
  "2-rarefaction": "#2ca02c",
};

const CASE_PALETTE = [
  "#e6550d", "#3182bd", "#31a354", "#756bb1", "#636363", "#fdae6b",
  "#9ecae1", "#a1d99b", "#bcbddc", "#969696", "#843c39", "#7b4173",
];

/** Wave category of the boundary between two adjacent regions, read
 * directly from the stored jumps: velocity decreases across shocks,
 * and the sign of the w-jump distinguishes the two families. */
export function labelFromJump(left: SnapshotRow, right: SnapshotRow): string {
  const dw = right.w - left.w;
  const dv = right.v - left.v;
  if (dv < 0) return dw > 0 ? "1-shock" : "2-shock";
  return dw < 0 ? "1-rarefaction" : "2-rarefaction";
}

export function caseCounts(events: EventRecord[]): Map<string, number> {
  const counts = new Map<string, number>();
  for (const ev of events) {
    counts.set(ev.case, (counts.get(ev.case) ?? 0) + 1);
  }
  return new Map([...counts.entries()].sort((a, b) =>
    a[0] < b[0] ? -1 : 1));
}

interface Point {
  t: number;
  x: number;
}

function finiteX(snapshots: Map<number, SnapshotRow[]>): number[] {
  const xs: number[] = [];
  for (const rows of snapshots.values()) {
    for (const row of rows) {
      if (Number.isFinite(row.xLeft)) xs.push(row.xLeft);
    }
  }
  return xs;
}

export function frontDiagram(events: EventRecord[],
                             snapshots: Map<number, SnapshotRow[]>): string {
  const times = [...snapshots.keys()].sort((a, b) => a - b);
  const allX = [...finiteX(snapshots), ...events.map((e) => e.x)];
  const allT = [...times, ...events.map((e) => e.t)];
  const xLo = allX.length ? Math.min(...allX) : -1;
  const xHi = allX.length ? Math.max(...allX) : 1;
  const tHi = allT.length ? Math.max(...allT) : 1;
  const xs = linearScale([xLo, xHi], [MARGIN.left, WIDTH - MARGIN.right]);
  const ys = linearScale([0, tHi], [HEIGHT - MARGIN.bottom, MARGIN.top]);

  // birth and death points per front id; initial fronts are numbered
  // left to right, matching the region boundaries of the t=0 snapshot
  const births = new Map<number, Point>();
  const deaths = new Map<number, Point>();
  const initialLabel = new Map<number, string>();
  const t0Rows = snapshots.get(times[0] ?? 0);
  if (t0Rows !== undefined && times[0] === 0) {
    for (let k = 0; k + 1 < t0Rows.length; k++) {
      births.set(k, { t: 0, x: t0Rows[k + 1].xLeft });
      initialLabel.set(k, labelFromJump(t0Rows[k], t0Rows[k + 1]));
    }
  }
  for (const ev of events) {
    for (const id of ev.in_ids) deaths.set(id, { t: ev.t, x: ev.x });
    for (const id of ev.out_ids) births.set(id, { t: ev.t, x: ev.x });
  }

  const parts: string[] = [];
  for (const [id, death] of deaths) {
    const birth = births.get(id);
    if (birth === undefined) continue;
    const color = initialLabel.get(id) !== undefined
      ? LABEL_COLORS[initialLabel.get(id)!]
      : "#b0b0b0";
    parts.push(line(xs(birth.x), ys(birth.t), xs(death.x), ys(death.t),
                    color, 0.7, 0.8));
  }

  const counts = caseCounts(events);
  const caseColor = new Map<string, string>();
  let slot = 0;
  for (const code of counts.keys()) {
    caseColor.set(code, CASE_PALETTE[slot % CASE_PALETTE.length]);
    slot += 1;
  }
  for (const ev of events) {
    parts.push(circle(xs(ev.x), ys(ev.t), 1.1, caseColor.get(ev.case)!));
  }
  if (events.length > 0 && events.length <= 60) {
    for (const ev of events) {
      parts.push(text(xs(ev.x) + 4, ys(ev.t) - 3, ev.case, 8));
    }
  }

  const legend: string[] = [];
  let ly = MARGIN.top + 8;
  const lx = WIDTH - MARGIN.right + 14;
  legend.push(text(lx, ly, `events: ${events.length}`, 12));
  ly += 18;
  for (const [code, n] of counts) {
    legend.push(rect(lx, ly - 8, 9, 9, caseColor.get(code)!));
    legend.push(text(lx + 14, ly, `${code}: ${n}`, 10));
    ly += 14;
  }
  ly += 6;
  for (const [label, color] of Object.entries(LABEL_COLORS)) {
    legend.push(line(lx, ly - 3, lx + 12, ly - 3, color, 2));
    legend.push(text(lx + 16, ly, label, 10));
    ly += 14;
  }

  const body = [
    text(MARGIN.left, 16, "Space-time front diagram", 14),
    axes(xs, ys, "x", "t"),
    ...parts,
    ...legend,
  ].join("\n");
  return document(WIDTH, HEIGHT, body);
}

/** Step series of the four functionals along the event log.  S and B
 * are accumulated from the per-event increments; B starts from the
 * total w-variation of the earliest stored snapshot. */
export function functionalSeries(events: EventRecord[],
                                 snapshots: Map<number, SnapshotRow[]>): string {
  const times = [...snapshots.keys()].sort((a, b) => a - b);
  let b0 = 0;
  const firstRows = snapshots.get(times[0] ?? 0);
  if (firstRows !== undefined) {
    for (let k = 0; k + 1 < firstRows.length; k++) {
      b0 += Math.abs(firstRows[k + 1].w - firstRows[k].w);
    }
  }
  const tEnd = Math.max(times[times.length - 1] ?? 1,
                        events.length ? events[events.length - 1].t : 0);

  const series: { name: string; pts: [number, number][]; color: string }[] = [
    { name: "S - S(0)", pts: [[0, 0]], color: "#d62728" },
    { name: "B", pts: [[0, b0]], color: "#1f77b4" },
    { name: "L", pts: [[0, 0]], color: "#2ca02c" },
    { name: "Q", pts: [[0, 1]], color: "#9467bd" },
  ];
  let s = 0;
  let b = b0;
  for (const ev of events) {
    s += ev.dS;
    b += ev.dB;
    series[0].pts.push([ev.t, s]);
    series[1].pts.push([ev.t, b]);
    series[2].pts.push([ev.t, ev.L_after]);
    series[3].pts.push([ev.t, ev.Q_after]);
  }
  for (const entry of series) {
    entry.pts.push([tEnd, entry.pts[entry.pts.length - 1][1]]);
  }

  const panelH = (HEIGHT - MARGIN.top - MARGIN.bottom - 3 * 18) / 4;
  const parts: string[] = [text(MARGIN.left, 16, "Functional time series", 14)];
  series.forEach((entry, i) => {
    const top = MARGIN.top + i * (panelH + 18);
    const vals = entry.pts.map((p) => p[1]);
    const xsc = linearScale([0, tEnd], [MARGIN.left, WIDTH - MARGIN.right]);
    const ysc = linearScale([Math.min(...vals), Math.max(...vals)],
                            [top + panelH, top]);
    // step curve: hold each value until the next event time
    const stepped: [number, number][] = [];
    for (let j = 0; j < entry.pts.length; j++) {
      const [t, v] = entry.pts[j];
      if (j > 0) stepped.push([xsc(t), ysc(entry.pts[j - 1][1])]);
      stepped.push([xsc(t), ysc(v)]);
    }
    parts.push(axes(xsc, ysc, i === 3 ? "t" : "", entry.name));
    parts.push(polyline(stepped, entry.color, 1.2));
  });
  parts.push(text(WIDTH - MARGIN.right + 14, MARGIN.top + 8,
                  `events: ${events.length}`, 12));
  return document(WIDTH, HEIGHT, parts.join("\n"));
}

function heatColor(u: number): string {
  // blue (low) through white to red (high)
  const clamped = Math.max(0, Math.min(1, u));
  const r = Math.round(255 * Math.min(1, 2 * clamped));
  const b = Math.round(255 * Math.min(1, 2 * (1 - clamped)));
  const g = Math.round(255 * (1 - Math.abs(2 * clamped - 1)) * 0.9
                       + 255 * 0.1 * Math.min(1, 2 * Math.min(clamped, 1 - clamped) + 0.8));
  return `rgb(${r},${Math.min(g, 255)},${b})`;
}

/** Piecewise-constant weight a(t, x) drawn as one band of rectangles
 * per stored snapshot; adjacent regions with equal weight merge. */
export function weightHeatmap(snapshots: Map<number, SnapshotRow[]>): string {
  const times = [...snapshots.keys()].sort((a, b) => a - b);
  const xsAll = finiteX(snapshots);
  const xLo = xsAll.length ? Math.min(...xsAll) : -1;
  const xHi = xsAll.length ? Math.max(...xsAll) : 1;
  const tHi = times.length ? Math.max(times[times.length - 1], 1e-9) : 1;
  const xs = linearScale([xLo, xHi], [MARGIN.left, WIDTH - MARGIN.right]);
  const ys = linearScale([0, tHi], [HEIGHT - MARGIN.bottom, MARGIN.top]);

  let aLo = Infinity;
  let aHi = -Infinity;
  for (const rows of snapshots.values()) {
    for (const row of rows) {
      aLo = Math.min(aLo, row.aLeft);
      aHi = Math.max(aHi, row.aLeft);
    }
  }
  if (!Number.isFinite(aLo)) {
    aLo = 0;
    aHi = 1;
  }
  const span = aHi - aLo || 1;

  const parts: string[] = [text(MARGIN.left, 16, "Weight a(t, x)", 14)];
  for (let i = 0; i < times.length; i++) {
    const t = times[i];
    const tNext = i + 1 < times.length ? times[i + 1]
      : t + (times.length > 1 ? t - times[i - 1] : tHi);
    const rows = snapshots.get(t)!;
    let start = xLo;
    let value = rows[0].aLeft;
    const flush = (end: number) => {
      if (end <= start) return;
      const y1 = ys(Math.min(tNext, tHi + (tHi - 0) * 0.02));
      parts.push(rect(xs(start), y1, xs(end) - xs(start),
                      ys(t) - y1, heatColor((value - aLo) / span)));
    };
    for (let k = 1; k < rows.length; k++) {
      if (rows[k].aLeft !== value) {
        const edge = Math.max(xLo, Math.min(xHi, rows[k].xLeft));
        flush(edge);
        start = edge;
        value = rows[k].aLeft;
      }
    }
    flush(xHi);
  }
  parts.push(axes(xs, ys, "x", "t"));

  const barX = WIDTH - MARGIN.right + 24;
  for (let i = 0; i < 40; i++) {
    const u = i / 39;
    const y = ys.range[0] - (ys.range[0] - ys.range[1]) * u;
    parts.push(rect(barX, y - 6, 16, 7, heatColor(u)));
  }
  parts.push(text(barX + 22, ys.range[0], fmt(aLo), 10));
  parts.push(text(barX + 22, ys.range[1], fmt(aHi), 10));
  parts.push(text(barX, ys.range[1] - 12, "a", 12));
  return document(WIDTH, HEIGHT, parts.join("\n"));
}

/** L1 error against the mesh parameter on log-log axes, with a
 * first-order reference slope. */
export function convergencePlot(points: ConvergencePoint[]): string {
  const sorted = [...points].sort((a, b) => a.delta - b.delta);
  const lx = sorted.map((p) => Math.log10(p.delta));
  const le = sorted.map((p) => Math.log10(p.error));
  const xsc = linearScale([Math.min(...lx) - 0.1, Math.max(...lx) + 0.1],
                          [MARGIN.left, WIDTH - MARGIN.right]);
  const ysc = linearScale([Math.min(...le) - 0.2, Math.max(...le) + 0.2],
                          [HEIGHT - MARGIN.bottom, MARGIN.top]);

  const parts: string[] = [
    text(MARGIN.left, 16, "Grid convergence (log-log)", 14),
    axes(xsc, ysc, "log10 delta", "log10 L1 error"),
  ];
  parts.push(polyline(
    sorted.map((p, i) => [xsc(lx[i]), ysc(le[i])] as [number, number]),
    "#1f77b4", 1.6));
  for (let i = 0; i < sorted.length; i++) {
    parts.push(circle(xsc(lx[i]), ysc(le[i]), 3.5, "#1f77b4"));
    parts.push(text(xsc(lx[i]) + 6, ysc(le[i]) - 6,
                    `d=${sorted[i].delta}`, 10));
  }
  // slope-one guide through the finest point
  const guide: [number, number][] = [
    [xsc(lx[0]), ysc(le[0])],
    [xsc(lx[lx.length - 1]), ysc(le[0] + (lx[lx.length - 1] - lx[0]))],
  ];
  parts.push(line(guide[0][0], guide[0][1], guide[1][0], guide[1][1],
                  "#999", 1, 0.9));
  parts.push(text(guide[1][0] + 6, guide[1][1], "slope 1", 10, "start", "#777"));
  parts.push(text(WIDTH - MARGIN.right + 14, MARGIN.top + 8,
                  `points: ${points.length}`, 12));
  return document(WIDTH, HEIGHT, parts.join("\n"));
}
