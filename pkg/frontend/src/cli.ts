/**
 * render <kind> <in.csv> <out.svg> with kind one of region, rates, decay.
 * Exits 0 on success (including empty inputs), 1 on schema mismatch or usage.
 */

import { readFileSync, writeFileSync } from "fs";

import { parseDecayCsv, parseRegionCsv, parseSurveyCsv, SchemaError } from "./csv";
import { renderDecay } from "./decay";
import { renderRates } from "./rates";
import { renderRegion } from "./region";

export function renderFile(kind: string, inPath: string, outPath: string): void {
  const text = readFileSync(inPath, "utf-8");
  let svg: string;
  if (kind === "region") {
    svg = renderRegion(parseRegionCsv(text));
  } else if (kind === "rates") {
    svg = renderRates(parseSurveyCsv(text));
  } else if (kind === "decay") {
    svg = renderDecay(parseDecayCsv(text));
  } else {
    throw new SchemaError(`unknown figure kind '${kind}' (expected region, rates, or decay)`);
  }
  writeFileSync(outPath, svg);
}

export function main(argv: string[]): number {
  if (argv.length !== 4 || argv[0] !== "render") {
    console.error("usage: render <region|rates|decay> <in.csv> <out.svg>");
    return 1;
  }
  try {
    renderFile(argv[1], argv[2], argv[3]);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema error: ${err.message}`);
    } else {
      console.error(String(err));
    }
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
