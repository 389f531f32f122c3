/**
 * render --spec fig1..fig9 --csv PATH [--csv PATH ...] --out PATH
 *
 * Exit codes: 0 success, 1 usage error, 2 invalid input (schema/coupling
 * deficiencies, unreadable files). No output file is written on failure.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { parseArgs } from "node:util";
import { pathToFileURL } from "node:url";

import { CsvError, CsvTable, parseCsv } from "./csv.js";
import { figureSpec } from "./figures.js";
import { renderFigure } from "./render.js";

export function main(argv: string[]): number {
  let args;
  try {
    args = parseArgs({
      args: argv,
      options: {
        spec: { type: "string" },
        csv: { type: "string", multiple: true },
        out: { type: "string" },
        checksums: { type: "boolean", default: false },
      },
      allowPositionals: true,
    });
  } catch (err) {
    console.error(`render: ${(err as Error).message}`);
    return 1;
  }
  const positionals = args.positionals;
  if (positionals.length > 0 && positionals[0] !== "render") {
    console.error(`render: unknown command '${positionals[0]}'`);
    return 1;
  }
  const { spec: specId, csv: csvPaths, out } = args.values;
  if (!specId || !csvPaths || csvPaths.length === 0 || !out) {
    console.error("usage: render --spec fig1..fig9 --csv PATH [--csv PATH ...] --out PATH [--checksums]");
    return 1;
  }

  let spec;
  try {
    spec = figureSpec(specId);
  } catch (err) {
    console.error(`render: ${(err as Error).message}`);
    return 1;
  }

  const tables: CsvTable[] = [];
  for (const path of csvPaths) {
    try {
      tables.push(parseCsv(path, readFileSync(path, "utf-8")));
    } catch (err) {
      console.error(`render: ${(err as Error).message}`);
      return 2;
    }
  }

  try {
    const result = renderFigure(spec, tables);
    if (result.parsedChecksum !== result.plottedChecksum) {
      console.error(
        `render: internal checksum mismatch (parsed ${result.parsedChecksum}, plotted ${result.plottedChecksum})`,
      );
      return 2;
    }
    writeFileSync(out, result.svg, "utf-8");
    if (args.values.checksums) {
      console.log(JSON.stringify({ spec: spec.id, out, checksum: result.plottedChecksum }));
    }
    return 0;
  } catch (err) {
    console.error(`render: ${(err as Error).message}`);
    return 2;
  }
}

const isDirectRun =
  process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href;
if (isDirectRun) {
  process.exit(main(process.argv.slice(2)));
}
