/** Orchestration: read a run directory, render every figure, and write
 * the sidecar stats file.  The inputs are never written to. */

import { existsSync, mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import {
  caseCounts, convergencePlot, frontDiagram, functionalSeries, weightHeatmap,
} from "./figures.js";
import { parseConvergence, parseEvents, parseSnapshots } from "./parse.js";

export interface RenderResult {
  written: string[];
  skipped: string[];
  eventCount: number;
}

export function renderRun(runDir: string, outDir: string,
                          convergenceCsv?: string): RenderResult {
  const eventsText = readFileSync(join(runDir, "events.ndjson"), "utf8");
  const snapshotsText = readFileSync(join(runDir, "snapshots.csv"), "utf8");
  const events = parseEvents(eventsText, join(runDir, "events.ndjson"));
  const snapshots = parseSnapshots(snapshotsText,
                                   join(runDir, "snapshots.csv"));

  mkdirSync(outDir, { recursive: true });
  const written: string[] = [];
  const skipped: string[] = [];
  const emit = (name: string, svg: string) => {
    const path = join(outDir, name);
    writeFileSync(path, svg);
    written.push(path);
  };

  emit("front_diagram.svg", frontDiagram(events, snapshots));
  emit("functionals.svg", functionalSeries(events, snapshots));
  emit("weight_heatmap.svg", weightHeatmap(snapshots));
  if (convergenceCsv !== undefined && existsSync(convergenceCsv)) {
    const points = parseConvergence(readFileSync(convergenceCsv, "utf8"),
                                    convergenceCsv);
    emit("convergence.svg", convergencePlot(points));
  } else {
    skipped.push("convergence.svg (no convergence table given)");
  }

  const counts = caseCounts(events);
  const lines: string[] = [`events: ${events.length}`];
  for (const [code, n] of counts) {
    lines.push(`case ${code}: ${n}`);
  }
  lines.push(`legend_event_total: ${events.length}`);
  lines.push(`snapshots: ${snapshots.size}`);
  for (const name of skipped) {
    lines.push(`skipped: ${name}`);
  }
  writeFileSync(join(outDir, "stats.txt"), lines.join("\n") + "\n");
  written.push(join(outDir, "stats.txt"));
  return { written, skipped, eventCount: events.length };
}
