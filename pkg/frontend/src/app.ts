/**
 * Browser entry point: builds the page model, owns the only WebSocket, and
 * runs the animation loop. Everything testable lives in the other modules;
 * this file is just wiring.
 */

import { StationClient } from "./client.js";
import { clickMsg, pauseMsg, resetMsg, resumeMsg, setParamMsg } from "./protocol.js";
import { renderStrip } from "./plots.js";
import { renderGlobalView, renderLocalView } from "./scene.js";
import { ViewState } from "./state.js";
import { Viewport } from "./view.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function ctx2d(canvas: HTMLCanvasElement): CanvasRenderingContext2D {
  const ctx = canvas.getContext("2d");
  if (!ctx) throw new Error("canvas 2d context unavailable");
  return ctx;
}

const globalCanvas = el<HTMLCanvasElement>("global-view");
const localCanvas = el<HTMLCanvasElement>("local-view");
const plotDCanvas = el<HTMLCanvasElement>("plot-d");
const plotACanvas = el<HTMLCanvasElement>("plot-alpha");
const plotPCanvas = el<HTMLCanvasElement>("plot-pix");
const urlInput = el<HTMLInputElement>("station-url");
const statusSpan = el<HTMLSpanElement>("status");
const logPre = el<HTMLPreElement>("event-log");

const st = new ViewState();
let client: StationClient | null = null;

function makeClient(url: string): StationClient {
  const c = new StationClient(url, (u) => new WebSocket(u));
  c.connect();
  return c;
}

el<HTMLButtonElement>("connect").addEventListener("click", () => {
  client?.close();
  client = makeClient(urlInput.value.trim());
});
el<HTMLButtonElement>("pause").addEventListener("click", () => client?.send(pauseMsg()));
el<HTMLButtonElement>("resume").addEventListener("click", () => client?.send(resumeMsg()));
el<HTMLButtonElement>("reset").addEventListener("click", () => client?.send(resetMsg()));
el<HTMLButtonElement>("apply-decimate").addEventListener("click", () => {
  const n = Number(el<HTMLInputElement>("decimate").value);
  if (Number.isFinite(n) && n >= 1) client?.send(setParamMsg("decimate", Math.round(n)));
});

function currentView(): Viewport {
  const image = st.snapshot
    ? { width: st.snapshot.image_width, height: st.snapshot.image_height }
    : { width: 640, height: 480 };
  return new Viewport(globalCanvas.width, globalCanvas.height, image);
}

globalCanvas.addEventListener("click", (ev) => {
  if (!client || client.status !== "open") return;
  const bounds = globalCanvas.getBoundingClientRect();
  const canvasPt = {
    x: ((ev.clientX - bounds.left) / bounds.width) * globalCanvas.width,
    y: ((ev.clientY - bounds.top) / bounds.height) * globalCanvas.height,
  };
  const view = currentView();
  const imagePt = view.toImage(canvasPt);
  if (!view.inImage(imagePt)) {
    st.log.push("click outside the image, not sent");
    return;
  }
  if (!st.authority) {
    st.log.push("click suppressed: no command authority");
    return;
  }
  client.send(clickMsg(imagePt.x, imagePt.y));
  st.noteClick(imagePt.x, imagePt.y, performance.now());
});

let lastLog = "";

function frameTick(): void {
  const now = performance.now();
  if (client) {
    client.tick(now);
    for (const msg of client.drain()) st.ingest(msg, now);
    st.connection = client.status;
    st.reconnectInSec = client.reconnectInSec(now);
  }

  renderGlobalView(ctx2d(globalCanvas), globalCanvas.width, globalCanvas.height, st, currentView(), now);
  renderLocalView(ctx2d(localCanvas), localCanvas.width, localCanvas.height, st.frame);
  renderStrip(ctx2d(plotDCanvas), plotDCanvas.width, plotDCanvas.height, st.plotD, {
    label: "d [m]",
    color: "#5aa2e0",
    yFloor: 0,
  });
  renderStrip(ctx2d(plotACanvas), plotACanvas.width, plotACanvas.height, st.plotAlpha, {
    label: "alpha [deg]",
    color: "#e0a15a",
  });
  renderStrip(ctx2d(plotPCanvas), plotPCanvas.width, plotPCanvas.height, st.plotPix, {
    label: "center offset [px]",
    color: "#a15ae0",
    yFloor: 0,
  });

  statusSpan.textContent = client
    ? `${client.status}${st.paused ? ", paused" : ""}${st.authority ? "" : ", view only"}`
    : "not connected";
  const log = st.log.toArray().slice(-12).join("\n");
  if (log !== lastLog) {
    logPre.textContent = log;
    lastLog = log;
  }
  requestAnimationFrame(frameTick);
}

client = makeClient(urlInput.value.trim());
requestAnimationFrame(frameTick);
