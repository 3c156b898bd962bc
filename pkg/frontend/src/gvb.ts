/**
 * GVB figure: left, rate-versus-distance curves for the orthogonal and
 * quasi-orthogonal regimes; right, the (delta, q) rate surface as an
 * axonometric wireframe.  Display uses the clamped rate column; raw values
 * ride along untouched in the returned series.
 */

import { mkdirSync, writeFileSync } from "fs";
import { dirname } from "path";

import { groupRows, numericColumn, parseCsv, provenance } from "./csv.js";
import { PlottedSeries } from "./fourPanel.js";
import { fmt, PALETTE, renderPanel, Series, svgDocument } from "./svg.js";

export interface GvbSpec {
  /** [curves CSV (mode/q/delta/R), surface CSV (same schema, mode=surface)] */
  inputs: string[];
  output: string;
  format: "svg" | "png";
}

export interface GvbResult {
  svg: string;
  series: PlottedSeries[];
  footer: string;
}

const PANEL_W = 460;
const PANEL_H = 340;

export function renderGvb(spec: GvbSpec): GvbResult {
  if (spec.format === "png") {
    throw new Error("png output is not implemented in this build; render svg instead");
  }
  if (spec.format !== "svg") {
    throw new Error(`output format must be svg or png, got "${spec.format}"`);
  }
  if (spec.inputs.length !== 2) {
    throw new Error("gvb figure needs exactly two inputs: curves CSV and surface CSV");
  }
  const curves = parseCsv(spec.inputs[0]);
  const surface = parseCsv(spec.inputs[1]);
  const plotted: PlottedSeries[] = [];

  const deltas = numericColumn(curves, "delta");
  const clamped = numericColumn(curves, "R_clamped");
  const raw = numericColumn(curves, "R_raw");
  const series: Series[] = [];
  for (const [mode, rows] of groupRows(curves, "mode")) {
    const xs: number[] = [];
    const ys: number[] = [];
    const rawKept: number[] = [];
    for (const r of rows) {
      if (deltas[r] === null || clamped[r] === null) continue;
      xs.push(deltas[r] as number);
      ys.push(clamped[r] as number);
      rawKept.push(raw[r] as number);
    }
    series.push({ label: mode, points: xs.map((x, i) => ({ x, y: ys[i] })) });
    plotted.push({ panel: "gvb-2d", label: mode, x: xs, y: ys });
    plotted.push({ panel: "gvb-2d-raw", label: mode, x: xs, y: rawKept });
  }
  const left = renderPanel(
    {
      title: "Achievable rate vs relative distance",
      xLabel: "delta",
      yLabel: "R (clamped)",
      xScale: "linear",
      yScale: "linear",
      series,
      width: PANEL_W,
      height: PANEL_H,
    },
    0,
    0,
  );

  const right = renderSurface(surface, plotted);
  const footer = provenance([curves, surface]);
  const svg = svgDocument(2 * PANEL_W, PANEL_H + 18, `${left}\n${right}`, footer);
  if (spec.output) {
    mkdirSync(dirname(spec.output), { recursive: true });
    writeFileSync(spec.output, svg, "utf-8");
  }
  return { svg, series: plotted, footer };
}

function renderSurface(table: ReturnType<typeof parseCsv>, plotted: PlottedSeries[]): string {
  const qs = numericColumn(table, "q");
  const ds = numericColumn(table, "delta");
  const rs = numericColumn(table, "R_clamped");
  const qValues = [...new Set(qs.map((v) => v as number))].sort((a, b) => a - b);
  const dValues = [...new Set(ds.map((v) => v as number))].sort((a, b) => a - b);
  const grid = new Map<string, number>();
  table.rows.forEach((_, i) => {
    grid.set(`${qs[i]}|${ds[i]}`, rs[i] as number);
  });
  const qLo = qValues[0];
  const qHi = qValues[qValues.length - 1];
  const dLo = dValues[0];
  const dHi = dValues[dValues.length - 1];
  const rLo = 0;
  const rHi = Math.max(...rs.map((v) => v as number), 1);

  // axonometric projection: delta to the right, q into the page, R upward
  const ox = PANEL_W + 90;
  const oy = PANEL_H - 70;
  const ax = 250;
  const bx = 120;
  const by = 78;
  const cz = 170;
  const px = (d: number, q: number) =>
    ox + ((d - dLo) / (dHi - dLo || 1)) * ax + ((q - qLo) / (qHi - qLo || 1)) * bx;
  const py = (d: number, q: number, r: number) =>
    oy - ((q - qLo) / (qHi - qLo || 1)) * by - ((r - rLo) / (rHi - rLo || 1)) * cz;

  const parts: string[] = [`<g data-xscale="linear" data-yscale="linear" data-surface="R(q,delta)">`];
  parts.push(
    `<text x="${fmt(ox + ax / 2 + bx / 2)}" y="22" text-anchor="middle" font-size="13" font-weight="bold">Rate surface R(q, delta)</text>`,
  );
  // wireframe along constant q (varying delta), one polyline per q line
  qValues.forEach((q, qi) => {
    const pts = dValues
      .filter((d) => grid.has(`${q}|${d}`))
      .map((d) => `${fmt(px(d, q))},${fmt(py(d, q, grid.get(`${q}|${d}`) as number))}`)
      .join(" ");
    const color = PALETTE[qi % 2 === 0 ? 0 : 6];
    parts.push(
      `<polyline data-series="q=${fmt(q)}" points="${pts}" fill="none" stroke="${color}" stroke-width="0.8" opacity="0.85"/>`,
    );
  });
  // wireframe along constant delta (sparser)
  dValues.forEach((d, di) => {
    if (di % 4 !== 0) return;
    const pts = qValues
      .filter((q) => grid.has(`${q}|${d}`))
      .map((q) => `${fmt(px(d, q))},${fmt(py(d, q, grid.get(`${q}|${d}`) as number))}`)
      .join(" ");
    parts.push(
      `<polyline data-series="delta=${fmt(d)}" points="${pts}" fill="none" stroke="#999" stroke-width="0.6" opacity="0.7"/>`,
    );
  });
  // axes
  parts.push(
    `<line x1="${fmt(px(dLo, qLo))}" y1="${fmt(py(dLo, qLo, 0))}" x2="${fmt(px(dHi, qLo))}" y2="${fmt(py(dHi, qLo, 0))}" stroke="#333" stroke-width="1"/>`,
  );
  parts.push(
    `<line x1="${fmt(px(dLo, qLo))}" y1="${fmt(py(dLo, qLo, 0))}" x2="${fmt(px(dLo, qHi))}" y2="${fmt(py(dLo, qHi, 0))}" stroke="#333" stroke-width="1"/>`,
  );
  parts.push(
    `<line x1="${fmt(px(dLo, qLo))}" y1="${fmt(py(dLo, qLo, 0))}" x2="${fmt(px(dLo, qLo))}" y2="${fmt(py(dLo, qLo, rHi))}" stroke="#333" stroke-width="1"/>`,
  );
  parts.push(
    `<text x="${fmt(px(dHi, qLo) + 6)}" y="${fmt(py(dHi, qLo, 0) + 12)}" font-size="10">delta=${fmt(dHi)}</text>`,
  );
  parts.push(
    `<text x="${fmt(px(dLo, qHi) + 4)}" y="${fmt(py(dLo, qHi, 0) - 4)}" font-size="10">q=${fmt(qHi)}</text>`,
  );
  parts.push(
    `<text x="${fmt(px(dLo, qLo) - 8)}" y="${fmt(py(dLo, qLo, rHi) - 4)}" text-anchor="end" font-size="10">R=${fmt(rHi)}</text>`,
  );
  parts.push("</g>");

  // expose plotted surface lines for the no-recompute assertion
  qValues.forEach((q) => {
    const xs: number[] = [];
    const ys: number[] = [];
    dValues.forEach((d) => {
      const key = `${q}|${d}`;
      if (grid.has(key)) {
        xs.push(d);
        ys.push(grid.get(key) as number);
      }
    });
    plotted.push({ panel: "gvb-3d", label: `q=${fmt(q)}`, x: xs, y: ys });
  });
  return parts.join("\n");
}
