#!/usr/bin/env node
/** Usage: isofront-figures <run-dir> --out <dir> [--convergence <csv>] */

import { pathToFileURL } from "node:url";

import { ParseError } from "./parse.js";
import { renderRun } from "./render.js";

export function main(argv: string[]): number {
  let runDir: string | undefined;
  let outDir = "figures";
  let convergence: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--out") {
      outDir = argv[++i];
    } else if (arg === "--convergence") {
      convergence = argv[++i];
    } else if (arg.startsWith("--")) {
      console.error(`unknown option ${arg}`);
      return 1;
    } else if (runDir === undefined) {
      runDir = arg;
    } else {
      console.error("only one run directory may be given");
      return 1;
    }
  }
  if (runDir === undefined) {
    console.error("usage: isofront-figures <run-dir> --out <dir> " +
      "[--convergence <csv>]");
    return 1;
  }
  try {
    const result = renderRun(runDir, outDir, convergence);
    console.log(`rendered ${result.written.length} files to ${outDir} ` +
      `(${result.eventCount} events)`);
    for (const name of result.skipped) {
      console.log(`notice: skipped ${name}`);
    }
    return 0;
  } catch (err) {
    if (err instanceof ParseError) {
      console.error(err.message);
      return 1;
    }
    if (err instanceof Error && "code" in err) {
      console.error(err.message);
      return 1;
    }
    throw err;
  }
}

if (process.argv[1] !== undefined
    && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
