/**
 * Figure CLI over the simulator's CSV outputs:
 *
 *   node dist/cli.js profiles <snap.csv> [more.csv ...] [--overlay wave.csv] --out fig.svg
 *   node dist/cli.js formation <s1> <s2> <s3> <s4> --out fig.svg
 *   node dist/cli.js trends <summary.csv> [--axis k] --out fig.svg
 *
 * Inputs are read-only; identical inputs produce identical bytes.
 */

import { readFileSync, writeFileSync } from "fs";
import { CsvError, parseSnapshot, parseSummary } from "./csv.js";
import { UsageError, formationFigure, profilesFigure, trendsFigure } from "./figures.js";

interface Args {
  positional: string[];
  options: Map<string, string>;
}

function parseArgs(argv: string[]): Args {
  const positional: string[] = [];
  const options = new Map<string, string>();
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg.startsWith("--")) {
      const value = argv[i + 1];
      if (value === undefined) throw new UsageError(`missing value for ${arg}`);
      options.set(arg.slice(2), value);
      i += 1;
    } else {
      positional.push(arg);
    }
  }
  return { positional, options };
}

function loadSnapshot(path: string) {
  return parseSnapshot(readFileSync(path, "utf8"), path);
}

export function run(argv: string[]): number {
  try {
    const [command, ...rest] = argv;
    if (!command) throw new UsageError("usage: profiles|formation|trends ... --out <file>");
    const { positional, options } = parseArgs(rest);
    const out = options.get("out");
    if (!out) throw new UsageError("--out <file> is required");

    let svg: string;
    if (command === "profiles") {
      if (positional.length === 0) throw new UsageError("profiles needs at least one snapshot CSV");
      const snapshots = positional.map(loadSnapshot);
      const overlayPath = options.get("overlay");
      const overlay = overlayPath ? loadSnapshot(overlayPath) : undefined;
      svg = profilesFigure(snapshots, overlay);
    } else if (command === "formation") {
      svg = formationFigure(positional.map(loadSnapshot));
    } else if (command === "trends") {
      if (positional.length !== 1) throw new UsageError("trends needs exactly one summary CSV");
      const rows = parseSummary(readFileSync(positional[0], "utf8"), positional[0]);
      svg = trendsFigure(rows, options.get("axis") ?? "value");
    } else {
      throw new UsageError(`unknown command ${command}`);
    }
    writeFileSync(out, svg);
    process.stdout.write(`wrote ${out}\n`);
    return 0;
  } catch (err) {
    if (err instanceof UsageError) {
      process.stderr.write(`usage error: ${err.message}\n`);
      return 2;
    }
    if (err instanceof CsvError || (err as NodeJS.ErrnoException).code !== undefined) {
      process.stderr.write(`error: ${(err as Error).message}\n`);
      return 1;
    }
    throw err;
  }
}

const invokedDirectly = process.argv[1]?.endsWith("cli.js") ?? false;
if (invokedDirectly) {
  process.exit(run(process.argv.slice(2)));
}
