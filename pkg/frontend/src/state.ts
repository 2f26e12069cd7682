/**
 * Everything the console knows, fed one inbound message at a time.
 *
 * The render loop reads this and nothing else, so ingest() must stay cheap
 * and every buffer in here is bounded. Clicks are optimistic: the clicked
 * spot is drawn immediately and becomes authoritative only when the click
 * ack arrives and the frame stream starts carrying the waypoint. Acks pair
 * with clicks oldest-first; an ack whose waypoint id is not newer than what
 * the stream already shows is stale and just discards the optimistic mark.
 */

import { Ack, ErrMsg, EventMsg, Frame, Inbound, Snapshot } from "./protocol.js";
import { Ring } from "./ring.js";

export type Connection = "connecting" | "open" | "closed";

export interface Sample {
  t: number;
  v: number | null;
}

export interface PendingClick {
  xPx: number;
  yPx: number;
  atWallMs: number;
}

export interface WaypointMark {
  id: number;
  xPx: number | null;
  yPx: number | null;
  reached: boolean;
  acked: boolean;
}

const PLOT_CAPACITY = 1500;
const LOG_CAPACITY = 60;
const PENDING_LIMIT = 8;
const PENDING_MAX_AGE_MS = 5000;

export class ViewState {
  snapshot: Snapshot | null = null;
  frame: Frame | null = null;
  lastFrameWallMs: number | null = null;
  connection: Connection = "connecting";
  reconnectInSec: number | null = null;
  authority = true; // assumed until the station says otherwise
  paused = false;
  finished = false;
  pending: PendingClick[] = [];
  waypoint: WaypointMark | null = null;
  plotD = new Ring<Sample>(PLOT_CAPACITY);
  plotAlpha = new Ring<Sample>(PLOT_CAPACITY);
  plotPix = new Ring<Sample>(PLOT_CAPACITY);
  log = new Ring<string>(LOG_CAPACITY);

  ingest(msg: Inbound, wallMs: number): void {
    switch (msg.kind) {
      case "snapshot":
        this.onSnapshot(msg);
        break;
      case "frame":
        this.onFrame(msg, wallMs);
        break;
      case "event":
        this.onEvent(msg);
        break;
      case "ack":
        this.onAck(msg);
        break;
      case "error":
        this.onError(msg);
        break;
    }
  }

  /** Record a click the console just sent, to draw until its ack. */
  noteClick(xPx: number, yPx: number, wallMs: number): void {
    this.prunePending(wallMs);
    this.pending.push({ xPx, yPx, atWallMs: wallMs });
    if (this.pending.length > PENDING_LIMIT) this.pending.shift();
  }

  /** Seconds since the last frame message, null before the first one. */
  staleSec(nowMs: number): number | null {
    if (this.lastFrameWallMs === null) return null;
    return (nowMs - this.lastFrameWallMs) / 1000;
  }

  /** Stream considered stale once frames stop for the station's own timeout. */
  isStale(nowMs: number): boolean {
    const s = this.staleSec(nowMs);
    if (s === null) return false;
    const limit = this.snapshot ? Math.max(this.snapshot.stale_timeout, 1.0) : 1.0;
    return s > limit && !this.paused && !this.finished;
  }

  private onSnapshot(msg: Snapshot): void {
    // Sent on connect and after a reset; either way the run starts over.
    this.snapshot = msg;
    this.paused = msg.paused;
    this.finished = msg.finished;
    this.frame = null;
    this.waypoint = null;
    this.pending = [];
    this.plotD.clear();
    this.plotAlpha.clear();
    this.plotPix.clear();
    this.log.push(`run context: ${msg.image_width}x${msg.image_height}, dt=${msg.dt}`);
  }

  private onFrame(msg: Frame, wallMs: number): void {
    this.frame = msg;
    this.lastFrameWallMs = wallMs;
    this.plotD.push({ t: msg.t, v: msg.d_smooth });
    this.plotAlpha.push({
      t: msg.t,
      v: msg.alpha_smooth === null ? null : (msg.alpha_smooth * 180) / Math.PI,
    });
    const pix =
      msg.obs_valid && msg.rc_px_x !== null && msg.rc_px_y !== null
        ? Math.hypot(msg.rc_px_x, msg.rc_px_y)
        : null;
    this.plotPix.push({ t: msg.t, v: pix });

    // The stream is the authority on the active waypoint.
    if (msg.wp_id > 0) {
      if (!this.waypoint || msg.wp_id > this.waypoint.id) {
        this.waypoint = { id: msg.wp_id, xPx: null, yPx: null, reached: false, acked: true };
      }
      if (msg.wp_id === this.waypoint.id) {
        this.waypoint.acked = true;
        this.waypoint.xPx = msg.wp_px_x;
        this.waypoint.yPx = msg.wp_px_y;
      }
    }
  }

  private onEvent(msg: EventMsg): void {
    const id = typeof msg.waypoint_id === "number" ? msg.waypoint_id : null;
    this.log.push(`${msg.t.toFixed(2)}s ${msg.event}${id !== null ? ` #${id}` : ""}`);
    if (msg.event === "waypoint_reached" && this.waypoint && id === this.waypoint.id) {
      this.waypoint.reached = true;
    }
    if (msg.event === "finished") this.finished = true;
  }

  private onAck(msg: Ack): void {
    if (msg.request === "click") {
      const click = this.pending.shift();
      const id = typeof msg.waypoint_id === "number" ? msg.waypoint_id : null;
      if (click === undefined || id === null) return;
      if (this.waypoint && id <= this.waypoint.id) return; // stale ack, drop the mark
      this.waypoint = { id, xPx: click.xPx, yPx: click.yPx, reached: false, acked: true };
    } else if (msg.request === "pause") {
      this.paused = true;
    } else if (msg.request === "resume") {
      this.paused = false;
    } else if (msg.request === "reset") {
      this.finished = false;
    }
  }

  private onError(msg: ErrMsg): void {
    this.log.push(`error: ${msg.reason}`);
    if (msg.reason.includes("authority")) {
      this.authority = false;
      this.pending.shift();
    } else if (msg.reason.includes("click")) {
      this.pending.shift();
    }
  }

  private prunePending(nowMs: number): void {
    // A click whose ack never came is abandoned, not resent.
    while (this.pending.length && nowMs - this.pending[0].atWallMs > PENDING_MAX_AGE_MS) {
      this.pending.shift();
    }
  }
}
