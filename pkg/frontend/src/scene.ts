/**
 * Schematic scene rendering. There is no video downlink in the loop, so
 * both panes are drawn purely from telemetry: the global pane is the
 * station's view of the camera image (frame rectangle, markers, waypoint,
 * heading ray), the local pane is a compass-style readout of the ground
 * robot itself.
 */

import { Draw2D } from "./draw.js";
import { Frame } from "./protocol.js";
import { ViewState } from "./state.js";
import { Viewport } from "./view.js";

const COLORS = {
  bg: "#0b0e13",
  frame: "#4a5568",
  grid: "#1d2430",
  rc: "#e05252",
  rh: "#4fae62",
  heading: "#8e9aab",
  waypoint: "#e8c547",
  reached: "#4fae62",
  pending: "#e8c547",
  text: "#9aa4b2",
  overlay: "rgba(128, 128, 128, 0.55)",
};

function circle(ctx: Draw2D, x: number, y: number, r: number): void {
  ctx.beginPath();
  ctx.arc(x, y, r, 0, 2 * Math.PI);
}

function cross(ctx: Draw2D, x: number, y: number, r: number): void {
  ctx.beginPath();
  ctx.moveTo(x - r, y);
  ctx.lineTo(x + r, y);
  ctx.moveTo(x, y - r);
  ctx.lineTo(x, y + r);
  ctx.stroke();
}

function overlay(ctx: Draw2D, w: number, h: number, lines: string[]): void {
  ctx.fillStyle = COLORS.overlay;
  ctx.fillRect(0, 0, w, h);
  ctx.fillStyle = "#e6e9ee";
  ctx.font = "14px sans-serif";
  ctx.textAlign = "center";
  lines.forEach((line, i) => ctx.fillText(line, w / 2, h / 2 + i * 20));
}

export function renderGlobalView(
  ctx: Draw2D,
  w: number,
  h: number,
  st: ViewState,
  view: Viewport,
  nowMs: number,
): void {
  ctx.setLineDash([]);
  ctx.globalAlpha = 1;
  ctx.clearRect(0, 0, w, h);
  ctx.fillStyle = COLORS.bg;
  ctx.fillRect(0, 0, w, h);

  // image frame rectangle and center cross
  const rect = view.imageRect();
  ctx.strokeStyle = COLORS.frame;
  ctx.lineWidth = 1.5;
  ctx.strokeRect(rect.x, rect.y, rect.w, rect.h);
  ctx.strokeStyle = COLORS.grid;
  ctx.lineWidth = 1;
  cross(ctx, view.cx, view.cy, 8);

  const f = st.frame;
  if (f && f.rc_px_x !== null && f.rc_px_y !== null) {
    const rc = view.toCanvas({ x: f.rc_px_x, y: f.rc_px_y });

    if (f.rh_px_x !== null && f.rh_px_y !== null) {
      const rh = view.toCanvas({ x: f.rh_px_x, y: f.rh_px_y });
      // heading ray from the center marker out through the head marker
      const dx = rh.x - rc.x;
      const dy = rh.y - rc.y;
      const n = Math.hypot(dx, dy) || 1;
      ctx.strokeStyle = COLORS.heading;
      ctx.lineWidth = 1;
      ctx.beginPath();
      ctx.moveTo(rc.x, rc.y);
      ctx.lineTo(rc.x + (dx / n) * 46, rc.y + (dy / n) * 46);
      ctx.stroke();

      ctx.fillStyle = COLORS.rh;
      circle(ctx, rh.x, rh.y, 4);
      ctx.fill();
    }

    ctx.fillStyle = COLORS.rc;
    circle(ctx, rc.x, rc.y, 6);
    ctx.fill();
  }

  // waypoint: acked draws from stream pixels when present, else the clicked
  // spot; reached flips the glyph from open to filled
  const wp = st.waypoint;
  if (wp && wp.xPx !== null && wp.yPx !== null) {
    const q = view.toCanvas({ x: wp.xPx, y: wp.yPx });
    ctx.strokeStyle = wp.reached ? COLORS.reached : COLORS.waypoint;
    ctx.lineWidth = 1.5;
    if (wp.reached) {
      ctx.fillStyle = COLORS.reached;
      circle(ctx, q.x, q.y, 5);
      ctx.fill();
    } else {
      circle(ctx, q.x, q.y, 7);
      ctx.stroke();
      cross(ctx, q.x, q.y, 10);
    }
    ctx.fillStyle = COLORS.text;
    ctx.font = "11px sans-serif";
    ctx.textAlign = "left";
    ctx.fillText(`wp ${wp.id}`, q.x + 12, q.y - 8);
  }

  // optimistic mark for the last unacked click
  const pend = st.pending[st.pending.length - 1];
  if (pend) {
    const q = view.toCanvas({ x: pend.xPx, y: pend.yPx });
    ctx.strokeStyle = COLORS.pending;
    ctx.setLineDash([3, 3]);
    ctx.lineWidth = 1;
    circle(ctx, q.x, q.y, 7);
    ctx.stroke();
    ctx.setLineDash([]);
  }

  // status line
  ctx.fillStyle = COLORS.text;
  ctx.font = "12px sans-serif";
  ctx.textAlign = "left";
  if (f) {
    const d = f.d_smooth === null ? "--" : f.d_smooth.toFixed(3);
    const a = f.alpha_smooth === null ? "--" : ((f.alpha_smooth * 180) / Math.PI).toFixed(1);
    ctx.fillText(`t ${f.t.toFixed(2)} s   d ${d} m   alpha ${a} deg`, 8, h - 8);
  } else {
    ctx.fillText("waiting for telemetry", 8, h - 8);
  }
  if (!st.authority) {
    ctx.textAlign = "right";
    ctx.fillText("view only: another console holds command", w - 8, h - 8);
  }

  if (st.connection !== "open") {
    const lines = ["disconnected"];
    if (st.reconnectInSec !== null) {
      lines.push(`reconnecting in ${Math.ceil(st.reconnectInSec)} s`);
    } else if (st.connection === "connecting") {
      lines.push("connecting...");
    }
    overlay(ctx, w, h, lines);
  } else if (st.isStale(nowMs)) {
    overlay(ctx, w, h, ["stale stream", `no frame for ${st.staleSec(nowMs)!.toFixed(1)} s`]);
  } else if (st.paused) {
    overlay(ctx, w, h, ["paused"]);
  } else if (st.finished) {
    overlay(ctx, w, h, ["run finished"]);
  }
}

export function renderLocalView(ctx: Draw2D, w: number, h: number, f: Frame | null): void {
  ctx.setLineDash([]);
  ctx.globalAlpha = 1;
  ctx.clearRect(0, 0, w, h);
  ctx.fillStyle = COLORS.bg;
  ctx.fillRect(0, 0, w, h);

  const cx = w / 2;
  const cy = h / 2 - 10;
  const r = Math.min(w, h) / 3;

  ctx.strokeStyle = COLORS.frame;
  ctx.lineWidth = 1;
  circle(ctx, cx, cy, r);
  ctx.stroke();

  ctx.fillStyle = COLORS.text;
  ctx.font = "11px sans-serif";
  ctx.textAlign = "center";
  ctx.fillText("+x", cx + r + 12, cy + 4);
  ctx.fillText("+y", cx, cy + r + 14);

  if (!f) {
    ctx.fillText("no telemetry", cx, cy);
    return;
  }

  // heading needle; world y is drawn downward to match the camera pane
  const hx = cx + r * 0.85 * Math.cos(f.ugv_psi);
  const hy = cy + r * 0.85 * Math.sin(f.ugv_psi);
  ctx.strokeStyle = COLORS.rc;
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.moveTo(cx, cy);
  ctx.lineTo(hx, hy);
  ctx.stroke();
  ctx.fillStyle = COLORS.rc;
  circle(ctx, cx, cy, 4);
  ctx.fill();

  // the simulated world has no obstacles, the indicator is always green
  ctx.fillStyle = COLORS.rh;
  circle(ctx, 14, 14, 5);
  ctx.fill();
  ctx.fillStyle = COLORS.text;
  ctx.textAlign = "left";
  ctx.fillText("path clear", 24, 18);

  ctx.textAlign = "center";
  ctx.fillText(
    `u ${f.ugv_u.toFixed(3)} m/s   r ${f.ugv_r.toFixed(3)} rad/s`,
    cx,
    h - 22,
  );
  ctx.fillText(`psi ${((f.ugv_psi * 180) / Math.PI).toFixed(1)} deg`, cx, h - 8);
}
