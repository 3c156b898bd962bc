/**
 * Minimal deterministic SVG chart primitives: no dependencies, plain string
 * assembly, fixed number formatting so identical inputs give identical bytes.
 */

export type Scale = "log" | "linear";

export interface SeriesPoint {
  x: number;
  y: number;
}

export interface Series {
  label: string;
  points: SeriesPoint[];
}

export interface PanelOptions {
  title: string;
  xLabel: string;
  yLabel: string;
  xScale: Scale;
  yScale: Scale;
  series: Series[];
  width: number;
  height: number;
}

export const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
];

const MARGIN = { left: 58, right: 12, top: 26, bottom: 42 };

export function fmt(value: number): string {
  if (value === 0) return "0";
  const out = value.toPrecision(6);
  return out.includes(".") || out.includes("e")
    ? out.replace(/\.?0+($|e)/, "$1")
    : out;
}

function transform(scale: Scale, lo: number, hi: number, outLo: number, outHi: number) {
  if (scale === "log") {
    const llo = Math.log10(lo);
    const lhi = Math.log10(hi);
    return (v: number) => outLo + ((Math.log10(v) - llo) / (lhi - llo || 1)) * (outHi - outLo);
  }
  return (v: number) => outLo + ((v - lo) / (hi - lo || 1)) * (outHi - outLo);
}

function extent(values: number[], scale: Scale): [number, number] {
  const usable = scale === "log" ? values.filter((v) => v > 0) : values;
  if (usable.length === 0) throw new Error("no plottable values for axis");
  let lo = Math.min(...usable);
  let hi = Math.max(...usable);
  if (lo === hi) {
    lo = scale === "log" ? lo / 10 : lo - 1;
    hi = scale === "log" ? hi * 10 : hi + 1;
  }
  return [lo, hi];
}

function ticks(lo: number, hi: number, scale: Scale): number[] {
  if (scale === "log") {
    const first = Math.ceil(Math.log10(lo) - 1e-9);
    const last = Math.floor(Math.log10(hi) + 1e-9);
    const out: number[] = [];
    for (let e = first; e <= last; e++) out.push(10 ** e);
    if (out.length === 0) out.push(lo, hi);
    return out;
  }
  const span = hi - lo;
  const step = 10 ** Math.floor(Math.log10(span / 4 || 1));
  const mult = span / step > 8 ? 2 : 1;
  const out: number[] = [];
  const start = Math.ceil(lo / (step * mult)) * step * mult;
  for (let v = start; v <= hi + 1e-12; v += step * mult) out.push(Number(v.toPrecision(12)));
  return out;
}

/** Render one panel as an SVG <g> fragment anchored at (x0, y0). */
export function renderPanel(opts: PanelOptions, x0: number, y0: number): string {
  const plotW = opts.width - MARGIN.left - MARGIN.right;
  const plotH = opts.height - MARGIN.top - MARGIN.bottom;
  const allX: number[] = [];
  const allY: number[] = [];
  for (const s of opts.series) {
    for (const p of s.points) {
      allX.push(p.x);
      allY.push(p.y);
    }
  }
  const [xLo, xHi] = extent(allX, opts.xScale);
  const [yLo, yHi] = extent(allY, opts.yScale);
  const sx = transform(opts.xScale, xLo, xHi, MARGIN.left, MARGIN.left + plotW);
  const sy = transform(opts.yScale, yLo, yHi, MARGIN.top + plotH, MARGIN.top);

  const parts: string[] = [];
  parts.push(
    `<g transform="translate(${x0},${y0})" data-xscale="${opts.xScale}" data-yscale="${opts.yScale}">`,
  );
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${fmt(plotW)}" height="${fmt(plotH)}" fill="none" stroke="#333" stroke-width="1"/>`,
  );
  parts.push(
    `<text x="${fmt(MARGIN.left + plotW / 2)}" y="16" text-anchor="middle" font-size="13" font-weight="bold">${opts.title}</text>`,
  );
  for (const t of ticks(xLo, xHi, opts.xScale)) {
    if (t < xLo - 1e-12 || t > xHi + 1e-12) continue;
    const px = sx(t);
    parts.push(
      `<line x1="${fmt(px)}" y1="${fmt(MARGIN.top + plotH)}" x2="${fmt(px)}" y2="${fmt(MARGIN.top + plotH + 4)}" stroke="#333"/>`,
    );
    parts.push(
      `<text x="${fmt(px)}" y="${fmt(MARGIN.top + plotH + 16)}" text-anchor="middle" font-size="10">${axisLabel(t, opts.xScale)}</text>`,
    );
  }
  for (const t of ticks(yLo, yHi, opts.yScale)) {
    if (t < yLo - 1e-12 || t > yHi + 1e-12) continue;
    const py = sy(t);
    parts.push(
      `<line x1="${fmt(MARGIN.left - 4)}" y1="${fmt(py)}" x2="${fmt(MARGIN.left)}" y2="${fmt(py)}" stroke="#333"/>`,
    );
    parts.push(
      `<text x="${fmt(MARGIN.left - 7)}" y="${fmt(py + 3)}" text-anchor="end" font-size="10">${axisLabel(t, opts.yScale)}</text>`,
    );
  }
  parts.push(
    `<text x="${fmt(MARGIN.left + plotW / 2)}" y="${fmt(opts.height - 6)}" text-anchor="middle" font-size="11">${opts.xLabel}</text>`,
  );
  parts.push(
    `<text x="14" y="${fmt(MARGIN.top + plotH / 2)}" text-anchor="middle" font-size="11" transform="rotate(-90 14 ${fmt(MARGIN.top + plotH / 2)})">${opts.yLabel}</text>`,
  );
  opts.series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const pts = s.points
      .map((p) => `${fmt(sx(p.x))},${fmt(sy(p.y))}`)
      .join(" ");
    parts.push(
      `<polyline data-series="${s.label}" data-n="${s.points.length}" points="${pts}" fill="none" stroke="${color}" stroke-width="1.5"/>`,
    );
    const ly = MARGIN.top + 8 + i * 13;
    parts.push(
      `<line x1="${fmt(MARGIN.left + plotW - 92)}" y1="${fmt(ly)}" x2="${fmt(MARGIN.left + plotW - 74)}" y2="${fmt(ly)}" stroke="${color}" stroke-width="1.5"/>`,
    );
    parts.push(
      `<text x="${fmt(MARGIN.left + plotW - 70)}" y="${fmt(ly + 3)}" font-size="9">${s.label}</text>`,
    );
  });
  parts.push("</g>");
  return parts.join("\n");
}

function axisLabel(value: number, scale: Scale): string {
  if (scale === "log") {
    const e = Math.round(Math.log10(value));
    return `1e${e}`;
  }
  return fmt(value);
}

export function svgDocument(width: number, height: number, body: string, footer: string): string {
  const footerText = footer
    ? `<text x="8" y="${height - 6}" font-size="9" fill="#555">${escapeXml(footer)}</text>`
    : "";
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
    body,
    footerText,
    "</svg>",
    "",
  ].join("\n");
}

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
