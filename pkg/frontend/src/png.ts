/** PNG backend: a small RGB raster with its own encoder (node:zlib). */

import { deflateSync } from "node:zlib";

import { FALLBACK, FONT, GLYPH_H, GLYPH_W } from "./font.js";
import { DrawOp, Layout } from "./layout.js";

function crc32(buf: Uint8Array): number {
  let crc = 0xffffffff;
  for (let i = 0; i < buf.length; i++) {
    crc ^= buf[i];
    for (let k = 0; k < 8; k++) {
      crc = crc & 1 ? (crc >>> 1) ^ 0xedb88320 : crc >>> 1;
    }
  }
  return (crc ^ 0xffffffff) >>> 0;
}

function chunk(type: string, data: Uint8Array): Uint8Array {
  const out = new Uint8Array(12 + data.length);
  const view = new DataView(out.buffer);
  view.setUint32(0, data.length);
  for (let i = 0; i < 4; i++) out[4 + i] = type.charCodeAt(i);
  out.set(data, 8);
  view.setUint32(8 + data.length, crc32(out.subarray(4, 8 + data.length)));
  return out;
}

export class Raster {
  readonly width: number;
  readonly height: number;
  readonly pixels: Uint8Array; // RGB

  constructor(width: number, height: number) {
    this.width = width;
    this.height = height;
    this.pixels = new Uint8Array(width * height * 3).fill(255);
  }

  set(x: number, y: number, rgb: [number, number, number]): void {
    const xi = Math.round(x);
    const yi = Math.round(y);
    if (xi < 0 || yi < 0 || xi >= this.width || yi >= this.height) return;
    const o = (yi * this.width + xi) * 3;
    this.pixels[o] = rgb[0];
    this.pixels[o + 1] = rgb[1];
    this.pixels[o + 2] = rgb[2];
  }

  fillRect(x: number, y: number, w: number, h: number, rgb: [number, number, number]): void {
    for (let yy = Math.round(y); yy < Math.round(y + h); yy++) {
      for (let xx = Math.round(x); xx < Math.round(x + w); xx++) {
        this.set(xx, yy, rgb);
      }
    }
  }

  line(x0: number, y0: number, x1: number, y1: number, rgb: [number, number, number], width = 1, dashed = false): void {
    let xa = Math.round(x0);
    let ya = Math.round(y0);
    const xb = Math.round(x1);
    const yb = Math.round(y1);
    const dx = Math.abs(xb - xa);
    const dy = -Math.abs(yb - ya);
    const sx = xa < xb ? 1 : -1;
    const sy = ya < yb ? 1 : -1;
    let err = dx + dy;
    let step = 0;
    for (;;) {
      if (!dashed || step % 10 < 6) {
        this.set(xa, ya, rgb);
        if (width > 1) {
          this.set(xa + 1, ya, rgb);
          this.set(xa, ya + 1, rgb);
        }
      }
      step++;
      if (xa === xb && ya === yb) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        xa += sx;
      }
      if (e2 <= dx) {
        err += dx;
        ya += sy;
      }
    }
  }

  disc(cx: number, cy: number, r: number, rgb: [number, number, number]): void {
    for (let yy = -r; yy <= r; yy++) {
      for (let xx = -r; xx <= r; xx++) {
        if (xx * xx + yy * yy <= r * r) this.set(cx + xx, cy + yy, rgb);
      }
    }
  }

  text(x: number, y: number, s: string, rgb: [number, number, number], anchor: "start" | "middle" | "end"): void {
    const adv = GLYPH_W + 1;
    const total = s.length * adv - 1;
    let px = Math.round(anchor === "start" ? x : anchor === "end" ? x - total : x - total / 2);
    const top = Math.round(y) - GLYPH_H + 1; // y is the text baseline
    for (const ch of s) {
      const glyph = FONT[ch] ?? (ch === " " ? FONT[" "] : FALLBACK);
      for (let row = 0; row < GLYPH_H; row++) {
        for (let col = 0; col < GLYPH_W; col++) {
          if (glyph[row] & (1 << (GLYPH_W - 1 - col))) {
            this.set(px + col, top + row, rgb);
          }
        }
      }
      px += adv;
    }
  }

  encode(): Uint8Array {
    const stride = this.width * 3;
    const raw = new Uint8Array((stride + 1) * this.height);
    for (let y = 0; y < this.height; y++) {
      raw[y * (stride + 1)] = 0; // filter type: none
      raw.set(this.pixels.subarray(y * stride, (y + 1) * stride), y * (stride + 1) + 1);
    }
    const ihdr = new Uint8Array(13);
    const view = new DataView(ihdr.buffer);
    view.setUint32(0, this.width);
    view.setUint32(4, this.height);
    ihdr[8] = 8; // bit depth
    ihdr[9] = 2; // color type: truecolor
    const signature = Uint8Array.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);
    const idat = chunk("IDAT", new Uint8Array(deflateSync(raw)));
    const parts = [signature, chunk("IHDR", ihdr), idat, chunk("IEND", new Uint8Array(0))];
    const out = new Uint8Array(parts.reduce((n, p) => n + p.length, 0));
    let offset = 0;
    for (const p of parts) {
      out.set(p, offset);
      offset += p.length;
    }
    return out;
  }
}

function hexToRgb(hex: string): [number, number, number] {
  const h = hex.replace("#", "");
  return [parseInt(h.slice(0, 2), 16), parseInt(h.slice(2, 4), 16), parseInt(h.slice(4, 6), 16)];
}

export function renderPng(layout: Layout): Uint8Array {
  const raster = new Raster(layout.width, layout.height);
  for (const op of layout.ops as DrawOp[]) {
    if (op.op === "rect") {
      raster.fillRect(op.x, op.y, op.w, op.h, hexToRgb(op.fill));
    } else if (op.op === "polyline") {
      const rgb = hexToRgb(op.color);
      for (let i = 1; i < op.points.length; i++) {
        raster.line(op.points[i - 1][0], op.points[i - 1][1], op.points[i][0], op.points[i][1], rgb, op.width, op.dashed);
      }
    } else if (op.op === "circle") {
      raster.disc(Math.round(op.x), Math.round(op.y), Math.round(op.r), hexToRgb(op.fill));
    } else {
      raster.text(op.x, op.y, op.text, hexToRgb(op.color), op.anchor);
    }
  }
  return raster.encode();
}
