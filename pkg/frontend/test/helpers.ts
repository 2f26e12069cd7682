import { Frame, Snapshot } from "../src/protocol.js";
import { Draw2D } from "../src/draw.js";

export function makeSnapshot(over: Partial<Snapshot> = {}): Snapshot {
  return {
    kind: "snapshot",
    t: 0,
    dt: 0.001,
    duration: 120,
    seed: 0,
    image_width: 640,
    image_height: 480,
    gx: 500,
    gy: 500,
    x0: 0,
    y0: 0,
    marker_gap: 0.15,
    arrival_epsilon: 0.05,
    stale_timeout: 0.5,
    frame_period: 0.04,
    command_period: 0.02,
    decimate: 20,
    paused: false,
    finished: false,
    ...over,
  };
}

export function makeFrame(over: Partial<Frame> = {}): Frame {
  return {
    kind: "frame",
    t: 0,
    ugv_x: 0.3,
    ugv_y: 0.2,
    ugv_psi: 0,
    ugv_u: 0,
    ugv_r: 0,
    uav_x: 0,
    uav_y: 0,
    uav_z: 3,
    uav_vx: 0,
    uav_vy: 0,
    uav_vz: 0,
    uav_roll: 0,
    uav_pitch: 0,
    uav_thrust: 13.73,
    rc_px_x: 50,
    rc_px_y: 33.3,
    rh_px_x: 75,
    rh_px_y: 33.3,
    obs_valid: 1,
    obs_in_frame: 1,
    wp_id: 0,
    wp_ground_x: null,
    wp_ground_y: null,
    wp_px_x: null,
    wp_px_y: null,
    d_raw: null,
    alpha_raw: null,
    d_smooth: null,
    alpha_smooth: null,
    err_x: 0.1,
    err_y: 0.06,
    head_dist: 25,
    command_sent: 0,
    ...over,
  };
}

export interface DrawOp {
  op: string;
  args: number[];
  text?: string;
  fillStyle: string;
  strokeStyle: string;
  dash: number[];
}

/** Records every draw call with the style active at the time. */
export class FakeCtx implements Draw2D {
  fillStyle: string | CanvasGradient | CanvasPattern = "";
  strokeStyle: string | CanvasGradient | CanvasPattern = "";
  lineWidth = 1;
  globalAlpha = 1;
  font = "";
  textAlign: CanvasTextAlign = "left";
  ops: DrawOp[] = [];
  private dash: number[] = [];

  private rec(op: string, args: number[] = [], text?: string): void {
    this.ops.push({
      op,
      args,
      text,
      fillStyle: String(this.fillStyle),
      strokeStyle: String(this.strokeStyle),
      dash: [...this.dash],
    });
  }

  clearRect(x: number, y: number, w: number, h: number): void {
    this.rec("clearRect", [x, y, w, h]);
  }
  fillRect(x: number, y: number, w: number, h: number): void {
    this.rec("fillRect", [x, y, w, h]);
  }
  strokeRect(x: number, y: number, w: number, h: number): void {
    this.rec("strokeRect", [x, y, w, h]);
  }
  beginPath(): void {
    this.rec("beginPath");
  }
  moveTo(x: number, y: number): void {
    this.rec("moveTo", [x, y]);
  }
  lineTo(x: number, y: number): void {
    this.rec("lineTo", [x, y]);
  }
  arc(x: number, y: number, r: number, a0: number, a1: number): void {
    this.rec("arc", [x, y, r, a0, a1]);
  }
  stroke(): void {
    this.rec("stroke");
  }
  fill(): void {
    this.rec("fill");
  }
  fillText(text: string, x: number, y: number): void {
    this.rec("fillText", [x, y], text);
  }
  setLineDash(segments: number[]): void {
    this.dash = [...segments];
  }
  save(): void {
    this.rec("save");
  }
  restore(): void {
    this.rec("restore");
  }

  texts(): string[] {
    return this.ops.filter((o) => o.op === "fillText").map((o) => o.text as string);
  }

  arcs(): DrawOp[] {
    return this.ops.filter((o) => o.op === "arc");
  }
}
