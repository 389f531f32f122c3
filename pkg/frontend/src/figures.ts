/**
 * The nine figure layouts: which model, which CSV kind, which columns and
 * which coupling curves each one draws.
 */

import type { CsvKind } from "./csv.js";

export type FigureId =
  | "fig1" | "fig2" | "fig3" | "fig4" | "fig5"
  | "fig6" | "fig7" | "fig8" | "fig9";

export interface CurveSpec {
  column: string;
  coupling: string;
  label: string;
  dash?: string;
}

export interface PanelLayout {
  title: string;
  yLabel: string;
  curves: CurveSpec[];
}

export interface FigureSpec {
  id: FigureId;
  title: string;
  model: "two-qubit" | "jc";
  kind: CsvKind;
  xLabel: string;
  panels: PanelLayout[];
}

export const COUPLING_COLORS: Record<string, string> = {
  weak: "#1f77b4",
  moderate: "#2ca02c",
  strong: "#d62728",
};

const WEAK_STRONG = ["weak", "strong"];
const ALL = ["weak", "moderate", "strong"];

function thermalQuad(model: "two-qubit" | "jc", id: FigureId, title: string): FigureSpec {
  const quad: [string, string][] = [
    ["C_S", "specific heat capacity"],
    ["dU_S", "internal-energy fluctuations"],
    ["Q", "quantum uncertainty"],
    ["dET", "temperature response of E*"],
  ];
  return {
    id,
    title,
    model,
    kind: "thermal",
    xLabel: "temperature T",
    panels: quad.map(([column, label]) => ({
      title: label,
      yLabel: column,
      curves: WEAK_STRONG.map((coupling) => ({ column, coupling, label: coupling })),
    })),
  };
}

function boundOverlay(model: "two-qubit" | "jc", id: FigureId, title: string): FigureSpec {
  return {
    id,
    title,
    model,
    kind: "thermal",
    xLabel: "temperature T",
    panels: [
      {
        title: "signal-to-noise bound vs optimum",
        yLabel: "(T/ΔT)²",
        curves: WEAK_STRONG.flatMap((coupling) => [
          { column: "snr_bound", coupling, label: `${coupling} bound` },
          { column: "snr_opt", coupling, label: `${coupling} optimal`, dash: "5,3" },
        ]),
      },
    ],
  };
}

function singleColumn(
  model: "two-qubit" | "jc",
  id: FigureId,
  title: string,
  kind: CsvKind,
  column: string,
  yLabel: string,
  couplings: string[],
): FigureSpec {
  return {
    id,
    title,
    model,
    kind,
    xLabel: "temperature T",
    panels: [
      {
        title,
        yLabel,
        curves: couplings.map((coupling) => ({ column, coupling, label: coupling })),
      },
    ],
  };
}

export const FIGURES: Record<FigureId, FigureSpec> = {
  fig1: thermalQuad("two-qubit", "fig1", "two-qubit model: heat capacity and its ingredients"),
  fig2: boundOverlay("two-qubit", "fig2", "two-qubit model: signal-to-noise bound"),
  fig3: singleColumn("two-qubit", "fig3", "two-qubit model: entropy", "thermal", "S_S", "S_S", WEAK_STRONG),
  fig4: singleColumn("two-qubit", "fig4", "two-qubit model: ergotropy", "thermal", "ergotropy_total", "ergotropy", ALL),
  fig5: singleColumn("two-qubit", "fig5", "two-qubit model: entropy production (t = 1)", "entropy-production", "Sigma", "Σ", ALL),
  fig6: thermalQuad("jc", "fig6", "JC model: heat capacity and its ingredients"),
  fig7: boundOverlay("jc", "fig7", "JC model: signal-to-noise bound"),
  fig8: singleColumn("jc", "fig8", "JC model: entropy", "thermal", "S_S", "S_S", WEAK_STRONG),
  fig9: singleColumn("jc", "fig9", "JC model: entropy production (t = 0.5)", "entropy-production", "Sigma", "Σ", ALL),
};

export function figureSpec(id: string): FigureSpec {
  const spec = (FIGURES as Record<string, FigureSpec>)[id];
  if (!spec) {
    throw new Error(`unknown figure id '${id}' (expected fig1..fig9)`);
  }
  return spec;
}
