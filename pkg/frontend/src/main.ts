import fs from "fs";
import { SchemaMismatch, readTable } from "./csv";
import { Field, spectrumSvg } from "./spectrum";
import { bifurcationSvg } from "./bifurcation";

const USAGE =
  "usage: render --csv <table.csv> --kind spectrum|bifurcation --out <figure.svg> [--field abs|re|im]";

interface Args {
  csv: string;
  kind: "spectrum" | "bifurcation";
  out: string;
  field: Field;
}

export function parseArgs(argv: string[]): Args {
  const opts = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    const value = argv[i + 1];
    if (!key.startsWith("--") || value === undefined) {
      throw new Error(USAGE);
    }
    opts.set(key.slice(2), value);
  }
  for (const key of opts.keys()) {
    if (!["csv", "kind", "out", "field"].includes(key)) {
      throw new Error(`unknown option --${key}\n${USAGE}`);
    }
  }
  const csv = opts.get("csv");
  const kind = opts.get("kind");
  const out = opts.get("out");
  const field = opts.get("field") ?? "abs";
  if (!csv || !kind || !out) throw new Error(USAGE);
  if (kind !== "spectrum" && kind !== "bifurcation") {
    throw new Error(`--kind must be spectrum or bifurcation, got ${kind}`);
  }
  if (field !== "abs" && field !== "re" && field !== "im") {
    throw new Error(`--field must be abs, re, or im, got ${field}`);
  }
  return { csv, kind, out, field };
}

export function run(argv: string[]): number {
  try {
    const args = parseArgs(argv);
    const table = readTable(args.csv);
    const svg =
      args.kind === "spectrum" ? spectrumSvg(table, args.field) : bifurcationSvg(table);
    fs.writeFileSync(args.out, svg + "\n");
    return 0;
  } catch (err) {
    const name = err instanceof SchemaMismatch ? "SchemaMismatch: " : "";
    const message = err instanceof Error ? err.message : String(err);
    process.stderr.write(`${name}${message}\n`);
    return 1;
  }
}

if (require.main === module) {
  process.exit(run(process.argv.slice(2)));
}
