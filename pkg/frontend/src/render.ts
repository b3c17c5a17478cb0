#!/usr/bin/env node
// CLI: render --csv <path> --out <dir> [--format svg]
// Reads one sweep CSV and writes both figures (alpha vs density and alpha vs
// area) into the output directory.  Exits nonzero on schema mismatch, naming
// the offending column.

import { mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import { pathToFileURL } from "node:url";
import { parseSweepCsv, SchemaError } from "./csv.js";
import { areaFigure, densityFigure } from "./figures.js";

function usage(): never {
  console.error(
    "usage: muletree-render render --csv <path> --out <dir> [--format svg]",
  );
  process.exit(1);
}

export function main(argv: string[]): number {
  if (argv[0] !== "render") usage();
  let csvPath: string | undefined;
  let outDir: string | undefined;
  let format = "svg";
  for (let i = 1; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (value === undefined) usage();
    if (flag === "--csv") csvPath = value;
    else if (flag === "--out") outDir = value;
    else if (flag === "--format") format = value;
    else usage();
  }
  if (csvPath === undefined || outDir === undefined) usage();
  if (format !== "svg") {
    console.error(
      `unsupported format "${format}": only "svg" output is implemented`,
    );
    return 1;
  }

  let text: string;
  try {
    text = readFileSync(csvPath, "utf8");
  } catch (err) {
    console.error(`cannot read ${csvPath}: ${(err as Error).message}`);
    return 1;
  }
  let rows;
  try {
    rows = parseSweepCsv(text);
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema mismatch in ${csvPath}: ${err.message}`);
      return 2;
    }
    throw err;
  }

  mkdirSync(outDir, { recursive: true });
  const density = densityFigure(rows);
  const { svg: area, notes } = areaFigure(rows);
  for (const note of notes) console.error(note);
  const densityOut = join(outDir, "alpha_vs_density.svg");
  const areaOut = join(outDir, "alpha_vs_area.svg");
  writeFileSync(densityOut, density);
  writeFileSync(areaOut, area);
  console.log(`wrote ${densityOut}`);
  console.log(`wrote ${areaOut}`);
  return 0;
}

if (
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(process.argv[1]).href
) {
  process.exit(main(process.argv.slice(2)));
}
