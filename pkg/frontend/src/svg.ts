/**
 * Minimal deterministic SVG chart primitives: linear scales, tick generation,
 * polyline series, legends and multi-panel layout. No DOM, no randomness, no
 * timestamps; identical input data yields byte-identical markup.
 */

import { NumberChecksum } from "./checksum.js";

export interface Series {
  label: string;
  x: number[];
  y: number[];
  color: string;
  dash?: string;
}

export interface PanelSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
}

const FONT = "font-family=\"Helvetica, Arial, sans-serif\"";

function fmt(value: number): string {
  // fixed 2-decimal pixel coordinates keep the markup deterministic
  return value.toFixed(2);
}

export function tickValues(lo: number, hi: number, target = 5): number[] {
  if (!(hi > lo)) {
    const pad = Math.abs(lo) > 0 ? Math.abs(lo) * 0.5 : 0.5;
    return tickValues(lo - pad, lo + pad, target);
  }
  const rawStep = (hi - lo) / target;
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const candidates = [1, 2, 2.5, 5, 10];
  let step = candidates[candidates.length - 1] * power;
  for (const c of candidates) {
    if (c * power >= rawStep) {
      step = c * power;
      break;
    }
  }
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12 * step; v += step) {
    ticks.push(Math.abs(v) < 1e-12 * step ? 0 : v);
  }
  return ticks;
}

function tickLabel(value: number): string {
  if (value === 0) return "0";
  const magnitude = Math.abs(value);
  if (magnitude >= 1e4 || magnitude < 1e-3) return value.toExponential(1);
  return String(Number(value.toPrecision(6)));
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (Number.isFinite(v)) {
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }
  if (!(hi >= lo)) return [0, 1];
  if (hi === lo) return [lo - 0.5, hi + 0.5];
  const pad = 0.04 * (hi - lo);
  return [lo - pad, hi + pad];
}

/** Renders one panel into <g> markup; records every plotted number. */
export function renderPanel(
  spec: PanelSpec,
  x0: number,
  y0: number,
  width: number,
  height: number,
  checksum: NumberChecksum,
): string {
  const margin = { left: 62, right: 12, top: 26, bottom: 40 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;
  const px = x0 + margin.left;
  const py = y0 + margin.top;

  const [xLo, xHi] = extent(spec.series.flatMap((s) => s.x));
  const [yLo, yHi] = extent(spec.series.flatMap((s) => s.y));
  const sx = (v: number) => px + ((v - xLo) / (xHi - xLo)) * plotW;
  const sy = (v: number) => py + plotH - ((v - yLo) / (yHi - yLo)) * plotH;

  const parts: string[] = [];
  parts.push(`<rect x="${fmt(px)}" y="${fmt(py)}" width="${fmt(plotW)}" height="${fmt(plotH)}" fill="none" stroke="#333" stroke-width="1"/>`);
  parts.push(`<text x="${fmt(px + plotW / 2)}" y="${fmt(y0 + 16)}" text-anchor="middle" font-size="13" ${FONT}>${spec.title}</text>`);

  for (const tick of tickValues(xLo, xHi)) {
    const tx = sx(tick);
    parts.push(`<line x1="${fmt(tx)}" y1="${fmt(py + plotH)}" x2="${fmt(tx)}" y2="${fmt(py + plotH + 4)}" stroke="#333"/>`);
    parts.push(`<text x="${fmt(tx)}" y="${fmt(py + plotH + 16)}" text-anchor="middle" font-size="10" ${FONT}>${tickLabel(tick)}</text>`);
  }
  for (const tick of tickValues(yLo, yHi)) {
    const ty = sy(tick);
    parts.push(`<line x1="${fmt(px - 4)}" y1="${fmt(ty)}" x2="${fmt(px)}" y2="${fmt(ty)}" stroke="#333"/>`);
    parts.push(`<text x="${fmt(px - 7)}" y="${fmt(ty + 3)}" text-anchor="end" font-size="10" ${FONT}>${tickLabel(tick)}</text>`);
    parts.push(`<line x1="${fmt(px)}" y1="${fmt(ty)}" x2="${fmt(px + plotW)}" y2="${fmt(ty)}" stroke="#ddd" stroke-width="0.5"/>`);
  }
  parts.push(`<text x="${fmt(px + plotW / 2)}" y="${fmt(py + plotH + 32)}" text-anchor="middle" font-size="11" ${FONT}>${spec.xLabel}</text>`);
  parts.push(`<text x="${fmt(x0 + 14)}" y="${fmt(py + plotH / 2)}" text-anchor="middle" font-size="11" ${FONT} transform="rotate(-90 ${fmt(x0 + 14)} ${fmt(py + plotH / 2)})">${spec.yLabel}</text>`);

  for (const series of spec.series) {
    checksum.addSeries(series.label, series.x, series.y);
    const points = series.x
      .map((vx, i) => `${fmt(sx(vx))},${fmt(sy(series.y[i]))}`)
      .join(" ");
    const dash = series.dash ? ` stroke-dasharray="${series.dash}"` : "";
    parts.push(`<polyline points="${points}" fill="none" stroke="${series.color}" stroke-width="1.6"${dash}/>`);
  }

  spec.series.forEach((series, i) => {
    const ly = py + 8 + i * 14;
    const lx = px + plotW - 112;
    const dash = series.dash ? ` stroke-dasharray="${series.dash}"` : "";
    parts.push(`<line x1="${fmt(lx)}" y1="${fmt(ly)}" x2="${fmt(lx + 18)}" y2="${fmt(ly)}" stroke="${series.color}" stroke-width="1.6"${dash}/>`);
    parts.push(`<text x="${fmt(lx + 22)}" y="${fmt(ly + 3)}" font-size="10" ${FONT}>${series.label}</text>`);
  });

  return parts.join("\n");
}

export function renderFigureSvg(
  title: string,
  panels: PanelSpec[],
  checksum: NumberChecksum,
): string {
  const grid = panels.length <= 1 ? [1, 1] : panels.length <= 2 ? [1, 2] : [2, 2];
  const panelW = 420;
  const panelH = 300;
  const width = grid[1] * panelW;
  const height = grid[0] * panelH + 24;
  const parts: string[] = [];
  parts.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`);
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  parts.push(`<text x="${fmt(width / 2)}" y="16" text-anchor="middle" font-size="14" ${FONT}>${title}</text>`);
  panels.forEach((panel, i) => {
    const row = Math.floor(i / grid[1]);
    const col = i % grid[1];
    parts.push(renderPanel(panel, col * panelW, 24 + row * panelH, panelW, panelH, checksum));
  });
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
