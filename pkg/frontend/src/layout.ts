/** Shared geometry: map a FigureModel to backend-independent draw ops. */

import { FigureModel, Series } from "./figure.js";

export interface Scale {
  min: number;
  max: number;
  toPx(v: number): number;
}

export type DrawOp =
  | { op: "rect"; x: number; y: number; w: number; h: number; fill: string; stroke?: string }
  | { op: "polyline"; points: Array<[number, number]>; color: string; width: number; dashed?: boolean }
  | { op: "circle"; x: number; y: number; r: number; fill: string }
  | { op: "text"; x: number; y: number; text: string; color: string; anchor: "start" | "middle" | "end" };

export interface Layout {
  width: number;
  height: number;
  ops: DrawOp[];
}

function linearScale(min: number, max: number, pxLo: number, pxHi: number): Scale {
  const span = max - min || 1;
  return {
    min,
    max,
    toPx: (v: number) => pxLo + ((v - min) / span) * (pxHi - pxLo),
  };
}

/** Round tick positions covering [min, max] at a 1/2/5 step. */
export function ticks(min: number, max: number, target = 6): number[] {
  const span = max - min || 1;
  const raw = span / target;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => span / s <= target) ?? 10 * mag;
  const out: number[] = [];
  for (let t = Math.ceil(min / step) * step; t <= max + 1e-12; t += step) {
    out.push(Math.abs(t) < step / 1e6 ? 0 : t);
  }
  return out;
}

function formatTick(v: number): string {
  const text = v.toPrecision(3);
  return String(Number(text));
}

function seriesExtent(series: Series[]): { x: [number, number]; y: [number, number] } {
  let xs: number[] = [];
  let ys: number[] = [];
  for (const s of series) {
    if (s.kind === "bars") {
      xs = xs.concat(s.x0, s.x1);
      ys = ys.concat(s.y, [0]);
    } else {
      xs = xs.concat(s.x);
      ys = ys.concat(s.y);
    }
  }
  const pad = (lo: number, hi: number): [number, number] => {
    const d = (hi - lo || 1) * 0.05;
    return [lo - d, hi + d];
  };
  return { x: pad(Math.min(...xs), Math.max(...xs)), y: pad(Math.min(0, ...ys), Math.max(...ys)) };
}

export function layoutFigure(model: FigureModel, width = 720, height = 480): Layout {
  const margin = { left: 64, right: 16, top: 36, bottom: 48 };
  const plot = {
    x0: margin.left,
    x1: width - margin.right,
    y0: height - margin.bottom,
    y1: margin.top,
  };
  const ext = seriesExtent(model.series);
  const sx = linearScale(ext.x[0], ext.x[1], plot.x0, plot.x1);
  const sy = linearScale(ext.y[0], ext.y[1], plot.y0, plot.y1);

  const ops: DrawOp[] = [];
  ops.push({ op: "rect", x: 0, y: 0, w: width, h: height, fill: "#ffffff" });

  // grid + ticks
  for (const t of ticks(sx.min, sx.max)) {
    const px = sx.toPx(t);
    ops.push({ op: "polyline", points: [[px, plot.y0], [px, plot.y1]], color: "#eeeeee", width: 1 });
    ops.push({ op: "polyline", points: [[px, plot.y0], [px, plot.y0 + 4]], color: "#333333", width: 1 });
    ops.push({ op: "text", x: px, y: plot.y0 + 16, text: formatTick(t), color: "#333333", anchor: "middle" });
  }
  for (const t of ticks(sy.min, sy.max)) {
    const py = sy.toPx(t);
    ops.push({ op: "polyline", points: [[plot.x0, py], [plot.x1, py]], color: "#eeeeee", width: 1 });
    ops.push({ op: "polyline", points: [[plot.x0 - 4, py], [plot.x0, py]], color: "#333333", width: 1 });
    ops.push({ op: "text", x: plot.x0 - 8, y: py + 3, text: formatTick(t), color: "#333333", anchor: "end" });
  }

  // series
  for (const s of model.series) {
    if (s.kind === "bars") {
      const base = sy.toPx(Math.max(0, sy.min));
      for (let i = 0; i < s.y.length; i++) {
        const xa = sx.toPx(s.x0[i]);
        const xb = sx.toPx(s.x1[i]);
        const yt = sy.toPx(s.y[i]);
        ops.push({
          op: "rect",
          x: Math.min(xa, xb),
          y: Math.min(yt, base),
          w: Math.abs(xb - xa),
          h: Math.abs(base - yt),
          fill: s.color,
          stroke: "#6b93b8",
        });
      }
    } else if (s.kind === "line") {
      ops.push({
        op: "polyline",
        points: s.x.map((x, i) => [sx.toPx(x), sy.toPx(s.y[i])] as [number, number]),
        color: s.color,
        width: 2,
        dashed: s.dashed,
      });
    } else {
      for (let i = 0; i < s.x.length; i++) {
        ops.push({ op: "circle", x: sx.toPx(s.x[i]), y: sy.toPx(s.y[i]), r: 4, fill: s.color });
      }
    }
  }

  // frame, labels, legend
  ops.push({
    op: "polyline",
    points: [
      [plot.x0, plot.y1],
      [plot.x1, plot.y1],
      [plot.x1, plot.y0],
      [plot.x0, plot.y0],
      [plot.x0, plot.y1],
    ],
    color: "#333333",
    width: 1,
  });
  ops.push({ op: "text", x: (plot.x0 + plot.x1) / 2, y: 20, text: model.title, color: "#111111", anchor: "middle" });
  ops.push({ op: "text", x: (plot.x0 + plot.x1) / 2, y: height - 12, text: model.xLabel, color: "#111111", anchor: "middle" });
  ops.push({ op: "text", x: 12, y: plot.y1 - 8, text: model.yLabel, color: "#111111", anchor: "start" });
  let ly = plot.y1 + 14;
  for (const s of model.series) {
    if (!s.label) continue;
    ops.push({ op: "rect", x: plot.x1 - 150, y: ly - 7, w: 10, h: 10, fill: s.kind === "bars" ? s.color : s.color });
    ops.push({ op: "text", x: plot.x1 - 134, y: ly + 2, text: s.label, color: "#111111", anchor: "start" });
    ly += 16;
  }
  return { width, height, ops };
}
