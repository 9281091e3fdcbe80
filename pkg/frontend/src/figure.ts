/** Figure models built from the unigate CSV schemas.
 *
 * No numerics are recomputed here: every plotted array is a column read
 * from the inputs (plus the three published asymptote lines for the
 * entropy figure).
 */

import { CsvDoc, numericColumn, requireColumns, SchemaError } from "./csv.js";

export interface BarsSeries {
  kind: "bars";
  label: string;
  x0: number[];
  x1: number[];
  y: number[];
  color: string;
}

export interface LineSeries {
  kind: "line";
  label: string;
  x: number[];
  y: number[];
  color: string;
  dashed?: boolean;
}

export interface PointSeries {
  kind: "points";
  label: string;
  x: number[];
  y: number[];
  color: string;
}

export type Series = BarsSeries | LineSeries | PointSeries;

export interface SourceColumn {
  source: string;
  column: string;
  values: number[];
}

export interface FigureModel {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  /** exact input columns that were plotted, for --dump-data */
  data: SourceColumn[];
}

const PALETTE = ["#1f5fa8", "#b03a2e", "#1e8449", "#7d3c98", "#b7950b"];

export function purityFigure(hist: CsvDoc, curve: CsvDoc): FigureModel {
  const [lo, hi, , dens] = requireColumns(hist, ["bin_lo", "bin_hi", "count", "density"], "histogram CSV");
  const [rc, dc] = requireColumns(curve, ["r", "density"], "curve CSV");
  const x0 = numericColumn(hist, lo, "histogram CSV");
  const x1 = numericColumn(hist, hi, "histogram CSV");
  const y = numericColumn(hist, dens, "histogram CSV");
  const cx = numericColumn(curve, rc, "curve CSV");
  const cy = numericColumn(curve, dc, "curve CSV");
  return {
    title: "purity of Haar-random two-qubit gates",
    xLabel: "purity r",
    yLabel: "density",
    series: [
      { kind: "bars", label: "samples", x0, x1, y, color: "#9dbfdd" },
      { kind: "line", label: "quadrature", x: cx, y: cy, color: "#b03a2e" },
    ],
    data: [
      { source: "hist", column: "bin_lo", values: x0 },
      { source: "hist", column: "bin_hi", values: x1 },
      { source: "hist", column: "density", values: y },
      { source: "curve", column: "r", values: cx },
      { source: "curve", column: "density", values: cy },
    ],
  };
}

/** Published asymptote offsets: <S_q> ~ 2 ln N - c_q. */
export const ASYMPTOTE_OFFSET: Record<number, number> = {
  1: 0.5,
  2: Math.log(2),
  4: Math.log(14) / 3,
};

export function entropyFigure(table: CsvDoc): FigureModel {
  const [ni, qi, mi] = requireColumns(table, ["n", "q", "mean"], "mean-entropy CSV");
  const n = numericColumn(table, ni, "mean-entropy CSV");
  const q = numericColumn(table, qi, "mean-entropy CSV");
  const mean = numericColumn(table, mi, "mean-entropy CSV");
  const qValues = [...new Set(q)].sort((a, b) => a - b);
  const series: Series[] = [];
  const nMin = Math.min(...n);
  const nMax = Math.max(...n);
  qValues.forEach((qv, k) => {
    const color = PALETTE[k % PALETTE.length];
    const idx = q.map((v, i) => [v, i] as const).filter(([v]) => v === qv).map(([, i]) => i);
    series.push({
      kind: "points",
      label: `q=${qv}`,
      x: idx.map((i) => Math.log(n[i])),
      y: idx.map((i) => mean[i]),
      color,
    });
    const offset = ASYMPTOTE_OFFSET[qv];
    if (offset !== undefined) {
      const xs = [Math.log(nMin), Math.log(nMax)];
      series.push({
        kind: "line",
        label: `2 ln n - ${offset.toFixed(3)}`,
        x: xs,
        y: xs.map((x) => 2 * x - offset),
        color,
        dashed: true,
      });
    }
  });
  return {
    title: "mean entanglement entropies vs ln n",
    xLabel: "ln n",
    yLabel: "mean entropy",
    series,
    data: [
      { source: "table", column: "n", values: n },
      { source: "table", column: "q", values: q },
      { source: "table", column: "mean", values: mean },
    ],
  };
}

/** CSV of exactly the arrays that were plotted. */
export function dumpData(model: FigureModel): string {
  const lines = ["source,column,index,value"];
  for (const col of model.data) {
    col.values.forEach((v, i) => lines.push(`${col.source},${col.column},${i},${String(v)}`));
  }
  return lines.join("\n") + "\n";
}

export function buildFigure(kind: string, input: CsvDoc, curve?: CsvDoc): FigureModel {
  if (kind === "purity") {
    if (!curve) {
      throw new SchemaError("purity figure needs --curve with the quadrature series");
    }
    return purityFigure(input, curve);
  }
  if (kind === "entropy-scaling") {
    return entropyFigure(input);
  }
  throw new SchemaError(`unknown figure kind '${kind}' (use purity or entropy-scaling)`);
}
