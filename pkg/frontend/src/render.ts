/**
 * Assemble a figure from parsed CSV tables.
 *
 * The renderer never computes physics: every curve is a column selection from
 * the CSV rows. Two SHA-256 checksums certify it: one over the arrays as
 * selected from the parsed tables, one accumulated by the drawing layer over
 * the numbers it actually plots. They must be identical.
 */

import { CsvTable, selectSeries } from "./csv.js";
import { NumberChecksum } from "./checksum.js";
import { COUPLING_COLORS, FigureSpec } from "./figures.js";
import { PanelSpec, renderFigureSvg } from "./svg.js";

export interface RenderResult {
  svg: string;
  parsedChecksum: string;
  plottedChecksum: string;
}

export function renderFigure(spec: FigureSpec, tables: CsvTable[]): RenderResult {
  const parsed = new NumberChecksum();
  const panels: PanelSpec[] = spec.panels.map((panel) => ({
    title: panel.title,
    xLabel: spec.xLabel,
    yLabel: panel.yLabel,
    series: panel.curves.map((curve) => {
      const { x, y } = selectSeries(tables, spec.kind, spec.model, curve.coupling, curve.column);
      parsed.addSeries(curve.label, x, y);
      return {
        label: curve.label,
        x,
        y,
        color: COUPLING_COLORS[curve.coupling] ?? "#555",
        dash: curve.dash,
      };
    }),
  }));

  const plotted = new NumberChecksum();
  const svg = renderFigureSvg(spec.title, panels, plotted);
  return { svg, parsedChecksum: parsed.digest(), plottedChecksum: plotted.digest() };
}
