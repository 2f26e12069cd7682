/**
 * Socket plumbing between the station and the render loop.
 *
 * Incoming text is queued raw and parsed only when the animation tick calls
 * drain(), so a message burst can never block rendering; the queue is
 * bounded and drops oldest first, same policy as the station's own side.
 * Reconnection is driven by tick() rather than timers, which keeps the
 * whole client synchronous and deterministic under test.
 */

import { Inbound, Outbound, parseInbound, ProtocolError } from "./protocol.js";

// handler params typed loosely so both the browser WebSocket and the ws
// package satisfy this without adapters
export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: ((ev: any) => void) | null;
  onclose: ((ev: any) => void) | null;
  onmessage: ((ev: any) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

const INBOX_LIMIT = 2048;
const RECONNECT_SEC = 2;

export class StationClient {
  status: "connecting" | "open" | "closed" = "closed";
  reconnectAtMs: number | null = null;
  parseFailures = 0;

  private sock: SocketLike | null = null;
  private inbox: string[] = [];
  private stopped = false;
  private wantReconnect = false;

  constructor(
    private readonly url: string,
    private readonly factory: SocketFactory,
  ) {}

  connect(): void {
    this.stopped = false;
    this.wantReconnect = false;
    this.reconnectAtMs = null;
    this.status = "connecting";
    const sock = this.factory(this.url);
    this.sock = sock;
    sock.onopen = () => {
      if (this.sock === sock) this.status = "open";
    };
    sock.onclose = () => {
      if (this.sock !== sock) return; // superseded socket, ignore
      this.sock = null;
      this.status = "closed";
      this.wantReconnect = !this.stopped;
    };
    sock.onmessage = (ev: { data: unknown }) => {
      if (this.sock !== sock) return;
      this.inbox.push(String(ev.data));
      if (this.inbox.length > INBOX_LIMIT) this.inbox.shift();
    };
  }

  /** Advance reconnect bookkeeping; call once per animation tick. */
  tick(nowMs: number): void {
    if (this.status !== "closed" || this.stopped) return;
    if (this.wantReconnect) {
      this.wantReconnect = false;
      this.reconnectAtMs = nowMs + RECONNECT_SEC * 1000;
    }
    if (this.reconnectAtMs !== null && nowMs >= this.reconnectAtMs) this.connect();
  }

  reconnectInSec(nowMs: number): number | null {
    if (this.reconnectAtMs === null) return null;
    return Math.max(0, (this.reconnectAtMs - nowMs) / 1000);
  }

  /** Parse and hand over everything received since the last drain. */
  drain(): Inbound[] {
    if (!this.inbox.length) return [];
    const texts = this.inbox;
    this.inbox = [];
    const out: Inbound[] = [];
    for (const text of texts) {
      try {
        out.push(parseInbound(text));
      } catch (e) {
        if (!(e instanceof ProtocolError)) throw e;
        this.parseFailures += 1;
      }
    }
    return out;
  }

  send(msg: Outbound): boolean {
    if (this.status !== "open" || !this.sock) return false;
    this.sock.send(JSON.stringify(msg));
    return true;
  }

  close(): void {
    this.stopped = true;
    this.wantReconnect = false;
    this.reconnectAtMs = null;
    const sock = this.sock;
    this.sock = null;
    this.status = "closed";
    sock?.close();
  }
}
