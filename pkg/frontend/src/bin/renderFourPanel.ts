/**
 * Standalone renderer for the four-panel figures.
 *
 *   node dist/bin/renderFourPanel.js --preset metrics --input a.csv ... --output fig.svg
 *   node dist/bin/renderFourPanel.js --spec figure.json
 *
 * Presets: "metrics" (four metric panels, one series per code) and
 * "logical" (one panel per input code with measured and model curves).
 */

import { readFileSync } from "fs";

import { FigureSpec } from "../figspec.js";
import { logicalPanelSpec, metricsPanelSpec, renderFourPanel } from "../fourPanel.js";

function parseArgs(argv: string[]) {
  const inputs: string[] = [];
  let output = "";
  let preset = "metrics";
  let specPath = "";
  for (let i = 0; i < argv.length; i++) {
    switch (argv[i]) {
      case "--input":
        inputs.push(argv[++i]);
        break;
      case "--output":
        output = argv[++i];
        break;
      case "--preset":
        preset = argv[++i];
        break;
      case "--spec":
        specPath = argv[++i];
        break;
      default:
        throw new Error(`unknown argument ${argv[i]}`);
    }
  }
  return { inputs, output, preset, specPath };
}

function main() {
  const { inputs, output, preset, specPath } = parseArgs(process.argv.slice(2));
  let spec: FigureSpec;
  if (specPath) {
    spec = JSON.parse(readFileSync(specPath, "utf-8")) as FigureSpec;
  } else {
    if (inputs.length === 0 || !output) {
      throw new Error("need --input (repeatable) and --output, or --spec <json>");
    }
    if (preset === "metrics") {
      spec = metricsPanelSpec(inputs, output);
    } else if (preset === "logical") {
      spec = logicalPanelSpec(inputs, output);
    } else {
      throw new Error(`unknown preset "${preset}" (metrics | logical)`);
    }
  }
  const result = renderFourPanel(spec);
  console.log(`wrote ${spec.output} (${result.series.length} series)`);
}

try {
  main();
} catch (err) {
  console.error(String(err instanceof Error ? err.message : err));
  process.exit(1);
}
