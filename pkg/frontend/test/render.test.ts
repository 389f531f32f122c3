import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { parseCsv, selectSeries } from "../src/csv.js";
import { FIGURES, FigureId, figureSpec } from "../src/figures.js";
import { renderFigure } from "../src/render.js";
import { NumberChecksum } from "../src/checksum.js";

const DATA = join(__dirname, "..", "testdata");
const FIXTURES = ["tq_thermal.csv", "jc_thermal.csv", "tq_ep.csv", "jc_ep.csv"];

function loadAll() {
  return FIXTURES.map((name) => parseCsv(name, readFileSync(join(DATA, name), "utf-8")));
}

const ALL_IDS = Object.keys(FIGURES) as FigureId[];

describe("renderFigure", () => {
  const tables = loadAll();

  it.each(ALL_IDS)("%s renders an SVG document", (id) => {
    const result = renderFigure(figureSpec(id), tables);
    expect(result.svg.startsWith("<svg ")).toBe(true);
    expect(result.svg.trimEnd().endsWith("</svg>")).toBe(true);
    expect(result.svg).toContain("<polyline");
  });

  it.each(ALL_IDS)("%s is deterministic", (id) => {
    const first = renderFigure(figureSpec(id), loadAll());
    const second = renderFigure(figureSpec(id), loadAll());
    expect(second.svg).toBe(first.svg);
    expect(second.plottedChecksum).toBe(first.plottedChecksum);
  });

  it.each(ALL_IDS)("%s plots exactly the parsed columns", (id) => {
    const result = renderFigure(figureSpec(id), tables);
    expect(result.plottedChecksum).toBe(result.parsedChecksum);
  });

  it("checksums match an independent recomputation from the CSV", () => {
    const spec = figureSpec("fig3");
    const result = renderFigure(spec, tables);
    const recomputed = new NumberChecksum();
    for (const curve of spec.panels[0].curves) {
      const { x, y } = selectSeries(tables, spec.kind, spec.model, curve.coupling, curve.column);
      recomputed.addSeries(curve.label, x, y);
    }
    expect(result.plottedChecksum).toBe(recomputed.digest());
  });

  it("panel counts follow the layouts", () => {
    expect(figureSpec("fig1").panels).toHaveLength(4);
    expect(figureSpec("fig2").panels).toHaveLength(1);
    expect(figureSpec("fig2").panels[0].curves).toHaveLength(4);
    expect(figureSpec("fig9").panels[0].curves).toHaveLength(3);
  });

  it("names a missing coupling in the data", () => {
    const weakOnly = loadAll().map((table) => ({
      ...table,
      rows: table.rows.filter((row) => row.coupling === "weak"),
    }));
    expect(() => renderFigure(figureSpec("fig4"), weakOnly)).toThrow(
      /coupling 'moderate' for model 'two-qubit' not present/,
    );
  });

  it("rejects an unknown figure id", () => {
    expect(() => figureSpec("fig10")).toThrow(/unknown figure id 'fig10'/);
  });
});
