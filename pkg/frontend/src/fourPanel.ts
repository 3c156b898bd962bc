/**
 * Multi-panel line figures from quasistab CSVs.
 *
 * Never recomputes physics: every plotted y value is a CSV cell, verbatim.
 * Points whose coordinate cannot live on the configured scale (empty cells,
 * non-positive values on a log axis) are dropped, not altered.
 */

import { mkdirSync, writeFileSync } from "fs";
import { dirname } from "path";

import { CsvTable, groupRows, hasColumn, numericColumn, parseCsv, provenance } from "./csv.js";
import { FigureSpec, PanelSpec, validateSpec } from "./figspec.js";
import { renderPanel, Series, svgDocument } from "./svg.js";

export interface PlottedSeries {
  panel: string;
  label: string;
  x: number[];
  y: number[];
}

export interface RenderResult {
  svg: string;
  series: PlottedSeries[];
  footer: string;
}

const PANEL_W = 430;
const PANEL_H = 300;

function panelSeries(
  spec: FigureSpec,
  panel: PanelSpec,
  tables: CsvTable[],
): { series: Series[]; plotted: PlottedSeries[] } {
  const indices = panel.inputs ?? tables.map((_, i) => i);
  const series: Series[] = [];
  const plotted: PlottedSeries[] = [];
  for (const idx of indices) {
    const table = tables[idx];
    const xs = numericColumn(table, spec.xColumn);
    const groups = hasColumn(table, "code")
      ? groupRows(table, "code")
      : new Map([["", table.rows.map((_, i) => i)]]);
    for (const [codeName, rowIdx] of groups) {
      for (const column of panel.yColumns) {
        const ys = numericColumn(table, column);
        const label =
          panel.yColumns.length > 1 ? `${codeName || "series"} ${column}` : codeName || column;
        const keptX: number[] = [];
        const keptY: number[] = [];
        for (const r of rowIdx) {
          const x = xs[r];
          const y = ys[r];
          if (x === null || y === null) continue;
          if (panel.xScale === "log" && x <= 0) continue;
          if (panel.yScale === "log" && y <= 0) continue;
          keptX.push(x);
          keptY.push(y);
        }
        if (keptX.length === 0) continue;
        series.push({ label, points: keptX.map((x, i) => ({ x, y: keptY[i] })) });
        plotted.push({ panel: panel.title, label, x: keptX, y: keptY });
      }
    }
  }
  if (series.length === 0) {
    throw new Error(`panel "${panel.title}" has no plottable series`);
  }
  return { series, plotted };
}

export function renderFourPanel(spec: FigureSpec): RenderResult {
  validateSpec(spec);
  const tables = spec.inputs.map(parseCsv);
  const cols = spec.layout === "2x2" ? 2 : 2;
  const rowsCount = spec.layout === "2x2" ? 2 : 1;
  const fragments: string[] = [];
  const plottedAll: PlottedSeries[] = [];
  spec.panels.forEach((panel, i) => {
    const { series, plotted } = panelSeries(spec, panel, tables);
    plottedAll.push(...plotted);
    const x0 = (i % cols) * PANEL_W;
    const y0 = Math.floor(i / cols) * PANEL_H;
    fragments.push(
      renderPanel(
        {
          title: panel.title,
          xLabel: panel.xLabel ?? spec.xColumn,
          yLabel: panel.yLabel ?? panel.yColumns.join(", "),
          xScale: panel.xScale,
          yScale: panel.yScale,
          series,
          width: PANEL_W,
          height: PANEL_H,
        },
        x0,
        y0,
      ),
    );
  });
  const footer = provenance(tables);
  const svg = svgDocument(cols * PANEL_W, rowsCount * PANEL_H + 18, fragments.join("\n"), footer);
  if (spec.output) {
    mkdirSync(dirname(spec.output), { recursive: true });
    writeFileSync(spec.output, svg, "utf-8");
  }
  return { svg, series: plottedAll, footer };
}

/** Fig-5-style layout: the four metric panels, one series per code. */
export function metricsPanelSpec(inputs: string[], output: string): FigureSpec {
  return {
    inputs,
    layout: "2x2",
    xColumn: "p",
    output,
    format: "svg",
    panels: [
      { title: "Logical error probability", yColumns: ["p_L"], xScale: "log", yScale: "log", yLabel: "p_L" },
      { title: "Fidelity", yColumns: ["fidelity_lb"], xScale: "log", yScale: "linear", yLabel: "F" },
      { title: "Trace distance", yColumns: ["trace_ub"], xScale: "log", yScale: "log", yLabel: "D" },
      { title: "Suppression factor", yColumns: ["suppression"], xScale: "log", yScale: "log", yLabel: "p_L / p" },
    ],
  };
}

/** Fig-4-style layout: one panel per code, measured p_L next to the two
 * analytic model columns when the CSV carries them. */
export function logicalPanelSpec(inputs: string[], output: string): FigureSpec {
  const panels: PanelSpec[] = inputs.map((path, i) => {
    const table = parseCsv(path);
    const columns = ["p_L"];
    for (const extra of ["pl_model_orth", "pl_model_quasi"]) {
      if (hasColumn(table, extra)) columns.push(extra);
    }
    const name = table.rows[0][table.header.indexOf("code")] ?? path;
    return {
      title: `${name}`,
      yColumns: columns,
      inputs: [i],
      xScale: "log",
      yScale: "log",
      yLabel: "p_L",
    } as PanelSpec;
  });
  return { inputs, layout: "2x2", xColumn: "p", panels, output, format: "svg" };
}
