import { readFileSync, writeFileSync } from "fs";
import { basename } from "path";
import { parseArgs } from "util";
import { parseResultCsv } from "./csv.js";
import { CurveSpec, Series, renderChart } from "./render.js";

const USAGE =
  "usage: mcik-ofdm-plot --csv results.csv[:label] [--csv ...] --out chart.svg [--title t]";

/** "path[:label]" -> curve spec; series follow the CSV's populated columns. */
export function loadCurve(spec: string): CurveSpec {
  const sep = spec.lastIndexOf(":");
  // a lone "C:\..."-style or unlabeled path has no usable label suffix
  const hasLabel = sep > 1;
  const path = hasLabel ? spec.slice(0, sep) : spec;
  const label = hasLabel ? spec.slice(sep + 1) : basename(path, ".csv");
  const parsed = parseResultCsv(readFileSync(path, "utf8"));
  const hasBound = parsed.points.some((p) => p.ber_bound !== null);
  const hasSim = parsed.points.some((p) => p.ber_sim !== null);
  if (!hasBound && !hasSim) {
    throw new Error(`${path}: neither ber_bound nor ber_sim is populated`);
  }
  const which: Series = hasBound && hasSim ? "both" : hasBound ? "bound" : "sim";
  return { label, which, points: parsed.points };
}

export function main(argv: string[]): number {
  let values;
  try {
    ({ values } = parseArgs({
      args: argv,
      options: {
        csv: { type: "string", multiple: true },
        out: { type: "string" },
        title: { type: "string" },
        help: { type: "boolean", short: "h" },
      },
    }));
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : String(err)}`);
    console.error(USAGE);
    return 2;
  }
  if (values.help) {
    console.log(USAGE);
    return 0;
  }
  if (!values.csv || values.csv.length === 0 || !values.out) {
    console.error(USAGE);
    return 2;
  }

  try {
    const curves = values.csv.map(loadCurve);
    const svg = renderChart(curves, { title: values.title });
    writeFileSync(values.out, svg);
    console.error(`wrote ${values.out} (${curves.length} curve(s))`);
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : String(err)}`);
    return 1;
  }
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
