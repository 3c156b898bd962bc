/** Figure configuration shared by the renderers. */

export type Layout = "2x2" | "1x2";
export type OutputFormat = "svg" | "png";
export type Scale = "log" | "linear";

export interface PanelSpec {
  title: string;
  /** Columns plotted as y-series; one series per (code group, column). */
  yColumns: string[];
  /** Indices into FigureSpec.inputs; defaults to every input. */
  inputs?: number[];
  xScale: Scale;
  yScale: Scale;
  xLabel?: string;
  yLabel?: string;
}

export interface FigureSpec {
  inputs: string[];
  layout: Layout;
  xColumn: string;
  panels: PanelSpec[];
  output: string;
  format: OutputFormat;
}

const PANELS_PER_LAYOUT: Record<Layout, number> = { "2x2": 4, "1x2": 2 };

export function validateSpec(spec: FigureSpec): void {
  if (spec.format !== "svg" && spec.format !== "png") {
    throw new Error(`output format must be svg or png, got "${spec.format}"`);
  }
  if (spec.format === "png") {
    throw new Error("png output is not implemented in this build; render svg instead");
  }
  const want = PANELS_PER_LAYOUT[spec.layout];
  if (want === undefined) {
    throw new Error(`unknown layout "${spec.layout}"`);
  }
  if (spec.panels.length !== want) {
    throw new Error(`layout ${spec.layout} needs ${want} panels, got ${spec.panels.length}`);
  }
  if (spec.inputs.length === 0) {
    throw new Error("at least one input CSV is required");
  }
  for (const panel of spec.panels) {
    for (const idx of panel.inputs ?? []) {
      if (idx < 0 || idx >= spec.inputs.length) {
        throw new Error(`panel "${panel.title}" references input ${idx} of ${spec.inputs.length}`);
      }
    }
    if (panel.yColumns.length === 0) {
      throw new Error(`panel "${panel.title}" has no y columns`);
    }
  }
}
