"""WebSocket service exposing a running engine to operator consoles.

Every message in either direction is one flat JSON object discriminated by
its ``kind`` field.

Console to station:

    {"kind": "click", "x_px": <px>, "y_px": <px>}     set a waypoint
    {"kind": "pause"} / {"kind": "resume"}            gate the pacing loop
    {"kind": "reset"}                                 restart the scenario
    {"kind": "set_param", "name": <str>, "value": <num>}

Station to console:

    {"kind": "snapshot", ...}    scenario context; always first on connect
                                 and re-broadcast after a reset
    {"kind": "frame", ...}       one telemetry row, decimated
    {"kind": "event", "event": <name>, "t": <s>, ...}
    {"kind": "ack", "request": <kind>, ...}
    {"kind": "error", "reason": <text>}

The first console to connect holds command authority; clicks from any other
connection are refused (their view stream is unaffected).  Malformed input
earns an error reply, never a disconnect.  NaN telemetry values are sent as
JSON null.

Everything runs on one asyncio loop: a pacing task steps the engine in small
wall-clock batches (best effort real time) and fans frames out through
per-client bounded queues, dropping oldest first so a slow console never
stalls the loop or other clients.
"""

import asyncio
import json
import math

from websockets.asyncio.server import serve
from websockets.exceptions import ConnectionClosed

from .engine import Engine

PACE_PERIOD = 0.05
QUEUE_LIMIT = 256


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


class LiveServer:
    def __init__(
        self,
        engine: Engine,
        host: str = "127.0.0.1",
        port: int = 8765,
        decimate: int = 20,
        pause_on_start: bool = False,
    ):
        if decimate < 1:
            raise ValueError("decimate must be >= 1")
        self.engine = engine
        self.host = host
        self.port = port
        self.decimate = decimate
        self.paused = pause_on_start
        self.finished = False
        self.clients: dict = {}
        self.authority = None
        self.bound_port: int | None = None

    # -- outbound ------------------------------------------------------------

    def snapshot_msg(self) -> dict:
        scn = self.engine.scn
        cam = scn.camera
        return {
            "kind": "snapshot",
            "t": self.engine.clock.t,
            "dt": scn.dt,
            "duration": scn.duration,
            "seed": scn.seed,
            "image_width": cam.image_width,
            "image_height": cam.image_height,
            "gx": cam.gx,
            "gy": cam.gy,
            "x0": cam.x0,
            "y0": cam.y0,
            "marker_gap": scn.ugv.L,
            "arrival_epsilon": self.engine.station.params.arrival_epsilon,
            "stale_timeout": self.engine.station.params.stale_timeout,
            "frame_period": self.engine.station.params.frame_period,
            "command_period": self.engine.cmd_steps * scn.dt,
            "decimate": self.decimate,
            "paused": self.paused,
            "finished": self.finished,
        }

    def _enqueue(self, q: asyncio.Queue, text: str):
        while True:
            try:
                q.put_nowait(text)
                return
            except asyncio.QueueFull:
                try:
                    q.get_nowait()
                except asyncio.QueueEmpty:
                    pass

    def _broadcast(self, msg: dict):
        text = json.dumps(msg)
        for q in self.clients.values():
            self._enqueue(q, text)

    def _send(self, ws, msg: dict):
        q = self.clients.get(ws)
        if q is not None:
            self._enqueue(q, json.dumps(msg))

    def _frame_msg(self, frame) -> dict:
        msg = {"kind": "frame"}
        for name, value in zip(frame._fields, frame):
            msg[name] = _jsonable(value)
        return msg

    def _event_msg(self, ev) -> dict:
        msg = {"kind": "event", "event": ev.kind, "t": ev.t}
        for k, v in ev.data.items():
            msg[k] = _jsonable(v)
        return msg

    # -- engine pacing -------------------------------------------------------

    def _total_steps(self) -> int:
        return round(self.engine.scn.duration / self.engine.scn.dt)

    def _step_batch(self, batch: int):
        eng = self.engine
        total = self._total_steps()
        for _ in range(batch):
            if eng.clock.step_index >= total:
                if not self.finished:
                    self.finished = True
                    self._broadcast({"kind": "event", "event": "finished", "t": eng.clock.t})
                return
            index = eng.clock.step_index
            events = eng.step()
            for ev in events:
                self._broadcast(self._event_msg(ev))
            if index % self.decimate == 0:
                self._broadcast(self._frame_msg(eng.frames[-1]))

    async def _pace(self):
        batch = max(1, round(PACE_PERIOD / self.engine.scn.dt))
        while True:
            if self.paused or self.finished:
                # still honor queued operator input so acks arrive while idle
                self.engine._apply_input(self.engine.clock.t)
            else:
                self._step_batch(batch)
            await asyncio.sleep(PACE_PERIOD)

    # -- inbound -------------------------------------------------------------

    def _dispatch(self, ws, raw):
        try:
            msg = json.loads(raw)
        except (json.JSONDecodeError, UnicodeDecodeError):
            self._send(ws, {"kind": "error", "reason": "malformed JSON"})
            return
        if not isinstance(msg, dict) or not isinstance(msg.get("kind"), str):
            self._send(ws, {"kind": "error", "reason": "message must be an object with a 'kind'"})
            return
        kind = msg["kind"]
        if kind == "click":
            self._on_click(ws, msg)
        elif kind == "pause":
            self.paused = True
            self._send(ws, {"kind": "ack", "request": "pause", "t": self.engine.clock.t})
        elif kind == "resume":
            self.paused = False
            self._send(ws, {"kind": "ack", "request": "resume", "t": self.engine.clock.t})
        elif kind == "reset":
            self.engine.reset()
            self.finished = False
            self._send(ws, {"kind": "ack", "request": "reset", "t": 0.0})
            self._broadcast(self.snapshot_msg())
        elif kind == "set_param":
            self._on_set_param(ws, msg)
        else:
            self._send(ws, {"kind": "error", "reason": f"unknown kind '{kind}'"})

    def _on_click(self, ws, msg):
        if ws is not self.authority:
            self._send(ws, {"kind": "error", "reason": "not the command authority"})
            return
        try:
            x = float(msg["x_px"])
            y = float(msg["y_px"])
        except (KeyError, TypeError, ValueError):
            self._send(ws, {"kind": "error", "reason": "click needs numeric x_px and y_px"})
            return

        def reply(ok, result):
            if ok:
                self._send(
                    ws,
                    {
                        "kind": "ack",
                        "request": "click",
                        "waypoint_id": result.waypoint_id,
                        "t": result.t_set,
                        "ground_x": result.ground_x,
                        "ground_y": result.ground_y,
                    },
                )
            else:
                self._send(ws, {"kind": "error", "reason": result})

        self.engine.queue_click(x, y, reply)

    def _on_set_param(self, ws, msg):
        name = msg.get("name")
        value = msg.get("value")
        if not isinstance(name, str) or not isinstance(value, (int, float)) or isinstance(value, bool):
            self._send(ws, {"kind": "error", "reason": "set_param needs a name and a numeric value"})
            return
        if name == "decimate":
            n = int(value)
            if n < 1:
                self._send(ws, {"kind": "error", "reason": "decimate must be >= 1"})
                return
            self.decimate = n
            self._send(ws, {"kind": "ack", "request": "set_param", "name": name})
            return

        def reply(ok, result):
            if ok:
                self._send(ws, {"kind": "ack", "request": "set_param", "name": result})
            else:
                self._send(ws, {"kind": "error", "reason": result})

        self.engine.queue_set_param(name, value, reply)

    # -- connection lifecycle --------------------------------------------------

    async def _sender(self, ws, q: asyncio.Queue):
        try:
            while True:
                await ws.send(await q.get())
        except ConnectionClosed:
            pass

    async def _handler(self, ws):
        q: asyncio.Queue = asyncio.Queue(maxsize=QUEUE_LIMIT)
        self.clients[ws] = q
        if self.authority is None:
            self.authority = ws
        try:
            await ws.send(json.dumps(self.snapshot_msg()))
        except ConnectionClosed:
            self.clients.pop(ws, None)
            if self.authority is ws:
                self.authority = next(iter(self.clients), None)
            return
        sender = asyncio.create_task(self._sender(ws, q))
        try:
            async for raw in ws:
                self._dispatch(ws, raw)
        except ConnectionClosed:
            pass
        finally:
            sender.cancel()
            self.clients.pop(ws, None)
            if self.authority is ws:
                self.authority = next(iter(self.clients), None)

    async def run(self):
        """Serve until cancelled (KeyboardInterrupt in the CLI)."""
        async with serve(self._handler, self.host, self.port) as server:
            self.bound_port = server.sockets[0].getsockname()[1]
            print(f"listening on ws://{self.host}:{self.bound_port}", flush=True)
            await self._pace()


def serve_live(engine: Engine, host: str, port: int, decimate: int, pause_on_start: bool):
    """Blocking entry point; returns on interrupt with telemetry intact."""
    server = LiveServer(engine, host, port, decimate, pause_on_start)
    try:
        asyncio.run(server.run())
    except KeyboardInterrupt:
        pass
