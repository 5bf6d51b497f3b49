import { ResultPoint } from "./csv.js";

export type Series = "bound" | "sim" | "both";

export interface CurveSpec {
  label: string;
  which: Series;
  points: ResultPoint[];
}

export interface RenderOptions {
  width?: number;
  height?: number;
  title?: string;
}

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
const MARGIN = { top: 36, right: 24, bottom: 48, left: 64 };

function decadeFloor(x: number): number {
  return Math.pow(10, Math.floor(Math.log10(x)));
}

function fmtTick(v: number): string {
  const e = Math.round(Math.log10(v));
  return `1e${e}`;
}

/** Render overlaid BER-vs-SNR curves (log y, linear x) as an SVG string. */
export function renderChart(curves: CurveSpec[], opts: RenderOptions = {}): string {
  if (curves.length === 0) throw new Error("no curves to render");
  const width = opts.width ?? 720;
  const height = opts.height ?? 540;
  const iw = width - MARGIN.left - MARGIN.right;
  const ih = height - MARGIN.top - MARGIN.bottom;

  const snrs: number[] = [];
  const bers: number[] = [];
  for (const c of curves) {
    for (const p of c.points) {
      snrs.push(p.snr_db);
      if (c.which !== "sim" && p.ber_bound !== null && p.ber_bound > 0) {
        bers.push(p.ber_bound);
      }
      if (c.which !== "bound" && p.ber_sim !== null && p.ber_sim > 0) {
        bers.push(p.ber_sim);
      }
    }
  }
  if (bers.length === 0) throw new Error("no positive BER values to plot");

  const x0 = Math.min(...snrs);
  const x1 = Math.max(...snrs);
  const yMin = decadeFloor(Math.min(...bers));
  const yMax = Math.pow(10, Math.ceil(Math.log10(Math.max(...bers))));
  const xs = (s: number) =>
    MARGIN.left + (x1 === x0 ? iw / 2 : ((s - x0) / (x1 - x0)) * iw);
  const ys = (b: number) =>
    MARGIN.top + ih - ((Math.log10(b) - Math.log10(yMin)) /
      (Math.log10(yMax) - Math.log10(yMin))) * ih;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="sans-serif" font-size="12">`);
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  if (opts.title) {
    parts.push(`<text x="${width / 2}" y="20" text-anchor="middle" ` +
      `font-size="14">${opts.title}</text>`);
  }

  // decade gridlines and y ticks
  for (let e = Math.round(Math.log10(yMin)); e <= Math.round(Math.log10(yMax)); e++) {
    const v = Math.pow(10, e);
    const y = ys(v);
    parts.push(`<line x1="${MARGIN.left}" x2="${width - MARGIN.right}" ` +
      `y1="${y.toFixed(1)}" y2="${y.toFixed(1)}" stroke="#ddd"/>`);
    parts.push(`<text x="${MARGIN.left - 6}" y="${(y + 4).toFixed(1)}" ` +
      `text-anchor="end">${fmtTick(v)}</text>`);
  }
  // x ticks every 5 dB
  for (let s = Math.ceil(x0 / 5) * 5; s <= x1; s += 5) {
    const x = xs(s);
    parts.push(`<line y1="${MARGIN.top}" y2="${height - MARGIN.bottom}" ` +
      `x1="${x.toFixed(1)}" x2="${x.toFixed(1)}" stroke="#eee"/>`);
    parts.push(`<text x="${x.toFixed(1)}" y="${height - MARGIN.bottom + 18}" ` +
      `text-anchor="middle">${s}</text>`);
  }
  parts.push(`<text x="${width / 2}" y="${height - 10}" text-anchor="middle">` +
    `SNR (dB)</text>`);
  parts.push(`<text x="16" y="${height / 2}" text-anchor="middle" ` +
    `transform="rotate(-90 16 ${height / 2})">BER</text>`);

  curves.forEach((curve, ci) => {
    const color = PALETTE[ci % PALETTE.length];
    if (curve.which !== "sim") {
      const pts = curve.points
        .filter((p) => p.ber_bound !== null && p.ber_bound > 0)
        .map((p) => `${xs(p.snr_db).toFixed(1)},${ys(p.ber_bound as number).toFixed(1)}`);
      if (pts.length > 0) {
        parts.push(`<polyline class="bound-line" fill="none" stroke="${color}" ` +
          `stroke-width="1.5" points="${pts.join(" ")}"/>`);
      }
    }
    if (curve.which !== "bound") {
      const markers: string[] = [];
      for (const p of curve.points) {
        if (p.ber_sim === null || p.ber_sim <= 0) continue;
        const x = xs(p.snr_db);
        const y = ys(p.ber_sim);
        if (p.stderr_sim !== null && p.stderr_sim > 0) {
          const hi = ys(p.ber_sim + 3 * p.stderr_sim);
          const loBer = p.ber_sim - 3 * p.stderr_sim;
          const lo = ys(Math.max(loBer, yMin / 10));
          markers.push(`<line x1="${x.toFixed(1)}" x2="${x.toFixed(1)}" ` +
            `y1="${hi.toFixed(1)}" y2="${lo.toFixed(1)}" stroke="${color}"/>`);
        }
        markers.push(`<circle cx="${x.toFixed(1)}" cy="${y.toFixed(1)}" r="3.5" ` +
          `fill="${color}" stroke="white"/>`);
      }
      parts.push(`<g class="sim-markers">${markers.join("")}</g>`);
    }
    const ly = MARGIN.top + 8 + ci * 18;
    const lx = width - MARGIN.right - 160;
    parts.push(`<line x1="${lx}" x2="${lx + 22}" y1="${ly}" y2="${ly}" ` +
      `stroke="${color}" stroke-width="1.5"/>`);
    parts.push(`<circle cx="${lx + 11}" cy="${ly}" r="3" fill="${color}"/>`);
    parts.push(`<text x="${lx + 28}" y="${ly + 4}">${curve.label}</text>`);
  });

  parts.push("</svg>");
  return parts.join("\n");
}
