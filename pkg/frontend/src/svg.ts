/** SVG backend for the shared draw ops. */

import { Layout } from "./layout.js";

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function renderSvg(layout: Layout): string {
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${layout.width}" height="${layout.height}" ` +
      `viewBox="0 0 ${layout.width} ${layout.height}" font-family="Helvetica, Arial, sans-serif" font-size="12">`,
  ];
  for (const op of layout.ops) {
    if (op.op === "rect") {
      const stroke = op.stroke ? ` stroke="${op.stroke}" stroke-width="0.5"` : "";
      parts.push(`<rect x="${op.x}" y="${op.y}" width="${op.w}" height="${op.h}" fill="${op.fill}"${stroke}/>`);
    } else if (op.op === "polyline") {
      const pts = op.points.map(([x, y]) => `${x.toFixed(2)},${y.toFixed(2)}`).join(" ");
      const dash = op.dashed ? ` stroke-dasharray="6,4"` : "";
      parts.push(`<polyline points="${pts}" fill="none" stroke="${op.color}" stroke-width="${op.width}"${dash}/>`);
    } else if (op.op === "circle") {
      parts.push(`<circle cx="${op.x.toFixed(2)}" cy="${op.y.toFixed(2)}" r="${op.r}" fill="${op.fill}"/>`);
    } else {
      const anchor = op.anchor === "start" ? "start" : op.anchor === "end" ? "end" : "middle";
      parts.push(`<text x="${op.x.toFixed(2)}" y="${op.y.toFixed(2)}" fill="${op.color}" text-anchor="${anchor}">${esc(op.text)}</text>`);
    }
  }
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
