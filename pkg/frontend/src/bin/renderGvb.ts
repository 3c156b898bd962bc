/**
 * Standalone renderer for the GVB figure (2D curves + rate surface).
 *
 *   node dist/bin/renderGvb.js --input bounds2d.csv --input bounds3d.csv --output gvb.svg
 */

import { renderGvb } from "../gvb.js";

function main() {
  const argv = process.argv.slice(2);
  const inputs: string[] = [];
  let output = "";
  for (let i = 0; i < argv.length; i++) {
    switch (argv[i]) {
      case "--input":
        inputs.push(argv[++i]);
        break;
      case "--output":
        output = argv[++i];
        break;
      default:
        throw new Error(`unknown argument ${argv[i]}`);
    }
  }
  if (inputs.length !== 2 || !output) {
    throw new Error("usage: --input curves.csv --input surface.csv --output fig.svg");
  }
  const result = renderGvb({ inputs, output, format: "svg" });
  console.log(`wrote ${output} (${result.series.length} series)`);
}

try {
  main();
} catch (err) {
  console.error(String(err instanceof Error ? err.message : err));
  process.exit(1);
}
