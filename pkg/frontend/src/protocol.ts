/**
 * Wire protocol of the station's live WebSocket endpoint.
 *
 * Every message in either direction is one flat JSON object discriminated
 * by its `kind` field. The console may only ever send the kinds listed in
 * OUTBOUND_KINDS; everything outbound is built through the helpers below so
 * nothing else can leak onto the socket.
 */

export type Outbound =
  | { kind: "click"; x_px: number; y_px: number }
  | { kind: "pause" }
  | { kind: "resume" }
  | { kind: "reset" }
  | { kind: "set_param"; name: string; value: number };

export const OUTBOUND_KINDS = ["click", "pause", "resume", "reset", "set_param"] as const;

export function clickMsg(xPx: number, yPx: number): Outbound {
  if (!Number.isFinite(xPx) || !Number.isFinite(yPx)) {
    throw new ProtocolError("click coordinates must be finite");
  }
  return { kind: "click", x_px: xPx, y_px: yPx };
}

export function pauseMsg(): Outbound {
  return { kind: "pause" };
}

export function resumeMsg(): Outbound {
  return { kind: "resume" };
}

export function resetMsg(): Outbound {
  return { kind: "reset" };
}

export function setParamMsg(name: string, value: number): Outbound {
  if (!Number.isFinite(value)) throw new ProtocolError("set_param value must be finite");
  return { kind: "set_param", name, value };
}

/** Scenario context, always the first message after connect and after a reset. */
export interface Snapshot {
  kind: "snapshot";
  t: number;
  dt: number;
  duration: number;
  seed: number;
  image_width: number;
  image_height: number;
  gx: number;
  gy: number;
  x0: number;
  y0: number;
  marker_gap: number;
  arrival_epsilon: number;
  stale_timeout: number;
  frame_period: number;
  command_period: number;
  decimate: number;
  paused: boolean;
  finished: boolean;
}

/**
 * One telemetry row. Matches the CSV schema field for field; the station
 * sends NaN as null, so everything that can be not-applicable is nullable.
 */
export interface Frame {
  kind: "frame";
  t: number;
  ugv_x: number;
  ugv_y: number;
  ugv_psi: number;
  ugv_u: number;
  ugv_r: number;
  uav_x: number;
  uav_y: number;
  uav_z: number;
  uav_vx: number;
  uav_vy: number;
  uav_vz: number;
  uav_roll: number;
  uav_pitch: number;
  uav_thrust: number;
  rc_px_x: number | null;
  rc_px_y: number | null;
  rh_px_x: number | null;
  rh_px_y: number | null;
  obs_valid: number;
  obs_in_frame: number;
  wp_id: number;
  wp_ground_x: number | null;
  wp_ground_y: number | null;
  wp_px_x: number | null;
  wp_px_y: number | null;
  d_raw: number | null;
  alpha_raw: number | null;
  d_smooth: number | null;
  alpha_smooth: number | null;
  err_x: number | null;
  err_y: number | null;
  head_dist: number | null;
  command_sent: number;
}

export interface EventMsg {
  kind: "event";
  event: string;
  t: number;
  [extra: string]: unknown;
}

export interface Ack {
  kind: "ack";
  request: string;
  [extra: string]: unknown;
}

export interface ErrMsg {
  kind: "error";
  reason: string;
}

export type Inbound = Snapshot | Frame | EventMsg | Ack | ErrMsg;

export class ProtocolError extends Error {}

function requireNumber(obj: Record<string, unknown>, field: string, kind: string): void {
  if (typeof obj[field] !== "number") {
    throw new ProtocolError(`${kind} message lacks numeric '${field}'`);
  }
}

/**
 * Parse one inbound message. Throws ProtocolError on anything that is not
 * a protocol object; field checks are shallow on purpose, the station is
 * the authority on its own payloads.
 */
export function parseInbound(text: string): Inbound {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch {
    throw new ProtocolError("not JSON");
  }
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    throw new ProtocolError("message must be an object");
  }
  const msg = raw as Record<string, unknown>;
  if (typeof msg.kind !== "string") throw new ProtocolError("message lacks a 'kind'");
  switch (msg.kind) {
    case "snapshot":
      requireNumber(msg, "image_width", "snapshot");
      requireNumber(msg, "image_height", "snapshot");
      requireNumber(msg, "dt", "snapshot");
      return msg as unknown as Snapshot;
    case "frame":
      requireNumber(msg, "t", "frame");
      return msg as unknown as Frame;
    case "event":
      if (typeof msg.event !== "string") throw new ProtocolError("event message lacks 'event'");
      requireNumber(msg, "t", "event");
      return msg as unknown as EventMsg;
    case "ack":
      if (typeof msg.request !== "string") throw new ProtocolError("ack message lacks 'request'");
      return msg as unknown as Ack;
    case "error":
      if (typeof msg.reason !== "string") throw new ProtocolError("error message lacks 'reason'");
      return msg as unknown as ErrMsg;
    default:
      throw new ProtocolError(`unknown kind '${msg.kind}'`);
  }
}
