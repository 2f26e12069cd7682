/**
 * Strip charts for d, alpha and the pixel error, the live counterpart of
 * the CSV post-processing plots. Layout is a pure function so the scaling
 * rules are testable without a canvas.
 */

import { Draw2D } from "./draw.js";
import { Ring } from "./ring.js";
import { Sample } from "./state.js";

export interface StripLayout {
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
  /** Polyline in canvas coordinates; null entries break the line (gaps). */
  points: ({ x: number; y: number } | null)[];
}

const PAD = { left: 42, right: 8, top: 8, bottom: 18 };

/**
 * Scale a sample window into a w-by-h chart. Returns null when there is
 * nothing finite to draw; the window always spans the retained samples, so
 * once the ring evicts, the x axis slides forward on its own.
 */
export function layoutStrip(
  buf: Ring<Sample>,
  w: number,
  h: number,
  yFloor: number | null = null,
): StripLayout | null {
  let xMin = Infinity;
  let xMax = -Infinity;
  let yMin = Infinity;
  let yMax = -Infinity;
  let finite = 0;
  for (let i = 0; i < buf.length; i += 1) {
    const s = buf.at(i);
    if (s.v === null || !Number.isFinite(s.v)) continue;
    finite += 1;
    if (s.t < xMin) xMin = s.t;
    if (s.t > xMax) xMax = s.t;
    if (s.v < yMin) yMin = s.v;
    if (s.v > yMax) yMax = s.v;
  }
  if (!finite) return null;
  if (yFloor !== null && yMin > yFloor) yMin = yFloor;
  if (xMax - xMin < 1e-9) xMax = xMin + 1;
  if (yMax - yMin < 1e-9) {
    yMin -= 0.5;
    yMax += 0.5;
  }
  const ySpan = yMax - yMin;
  yMin -= 0.05 * ySpan;
  yMax += 0.05 * ySpan;

  const plotW = w - PAD.left - PAD.right;
  const plotH = h - PAD.top - PAD.bottom;
  const points: StripLayout["points"] = [];
  for (let i = 0; i < buf.length; i += 1) {
    const s = buf.at(i);
    if (s.v === null || !Number.isFinite(s.v) || s.t < xMin) {
      points.push(null);
      continue;
    }
    points.push({
      x: PAD.left + ((s.t - xMin) / (xMax - xMin)) * plotW,
      y: PAD.top + (1 - (s.v - yMin) / (yMax - yMin)) * plotH,
    });
  }
  return { xMin, xMax, yMin, yMax, points };
}

export interface StripStyle {
  label: string;
  color: string;
  yFloor?: number;
}

export function renderStrip(
  ctx: Draw2D,
  w: number,
  h: number,
  buf: Ring<Sample>,
  style: StripStyle,
): void {
  ctx.clearRect(0, 0, w, h);
  ctx.fillStyle = "#11151c";
  ctx.fillRect(0, 0, w, h);

  // axes and label are drawn even for an empty buffer
  ctx.strokeStyle = "#4a5568";
  ctx.lineWidth = 1;
  ctx.setLineDash([]);
  ctx.strokeRect(PAD.left, PAD.top, w - PAD.left - PAD.right, h - PAD.top - PAD.bottom);
  ctx.fillStyle = "#9aa4b2";
  ctx.font = "11px sans-serif";
  ctx.textAlign = "left";
  ctx.fillText(style.label, PAD.left + 4, PAD.top + 12);

  const layout = layoutStrip(buf, w, h, style.yFloor ?? null);
  if (!layout) return;

  ctx.textAlign = "right";
  ctx.fillText(layout.yMax.toPrecision(3), PAD.left - 4, PAD.top + 10);
  ctx.fillText(layout.yMin.toPrecision(3), PAD.left - 4, h - PAD.bottom);
  ctx.textAlign = "center";
  ctx.fillText(`${layout.xMin.toFixed(1)}..${layout.xMax.toFixed(1)} s`, w / 2, h - 4);

  ctx.strokeStyle = style.color;
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  let pen = false;
  for (const p of layout.points) {
    if (!p) {
      pen = false;
      continue;
    }
    if (pen) {
      ctx.lineTo(p.x, p.y);
    } else {
      ctx.moveTo(p.x, p.y);
      pen = true;
    }
  }
  ctx.stroke();
}
