"""Websocket teleoperation bridge: human velocity commands through the filter.

A single owner task advances the simulation at a fixed tick rate; network
ingress only deposits the latest command into a one-slot mailbox, and egress
broadcasts immutable JSON state snapshots. The filter runs server-side only —
safety never depends on client behavior.
"""

from __future__ import annotations

import asyncio
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Set, Union

import numpy as np
import websockets

from . import cbf, sensing
from .core import Circle, Segment, saturate
from .dynamics import PlantState, VelocityLag, step
from .errors import NoObstacleInViewError, SafeFilterError
from .scenario_io import load_scenario

DEFAULT_PORT = 8090
SCAN_DECIMATION = 8  # every k-th beam in StateMsg keeps 50 Hz frames small


@dataclass
class Mailbox:
    """Latest-wins command slot with sequence-number monotonicity."""

    vx: float = 0.0
    vy: float = 0.0
    last_seq: int = -1
    malformed: int = 0
    stale: int = 0

    def deposit(self, raw: Union[str, bytes]) -> None:
        try:
            msg = json.loads(raw)
            if msg.get("type") != "cmd":
                raise ValueError("not a cmd")
            seq = int(msg["seq"])
            vx, vy = float(msg["vx"]), float(msg["vy"])
        except (ValueError, TypeError, KeyError, AttributeError):
            self.malformed += 1
            return
        if seq <= self.last_seq:
            self.stale += 1
            return
        self.last_seq = seq
        self.vx, self.vy = vx, vy


def _scene_message(spec) -> str:
    obstacles = []
    for o in spec.scene.obstacles:
        if isinstance(o, Circle):
            obstacles.append({"kind": "circle", "center": list(o.center), "radius": o.radius})
        elif isinstance(o, Segment):
            obstacles.append({"kind": "segment", "a": list(o.a), "b": list(o.b),
                              "thickness": o.thickness})
    return json.dumps({
        "type": "scene",
        "goal": list(map(float, spec.scene.goal)),
        "bounds": list(map(float, spec.scene.bounds)),
        "obstacles": obstacles,
        "v_max": spec.cfg.v_max,
        "d_obs": spec.cfg.d_obs,
    })


class TeleopServer:
    def __init__(self, scene_path: Union[str, Path], port: int = DEFAULT_PORT,
                 tick_hz: float = 50.0):
        self.spec = load_scenario(scene_path)
        self.port = port
        self.dt = 1.0 / tick_hz
        self.mailbox = Mailbox()
        self.clients: Set = set()
        self.state = PlantState.at_rest(self.spec.start)
        self.plant = VelocityLag()
        # omnidirectional scan: a teleoperated robot can be driven backwards
        self.lidar = sensing.LidarSpec(beam_count=self.spec.lidar.beam_count
                                       if self.spec.lidar else 1080,
                                       fov=2 * math.pi)
        self.t = 0.0
        self.min_h = float("inf")

    def tick_state(self) -> str:
        """Advance one control tick and return the StateMsg JSON."""
        cfg = self.spec.cfg
        v_des = saturate(np.array([self.mailbox.vx, self.mailbox.vy]), cfg.v_max)
        s = sensing.scan(self.state.position, 0.0, self.spec.scene, self.lidar)
        try:
            be = sensing.scan_barrier(s, cfg.d_obs)
            v_star, intervened = cbf.filter_single_integrator(
                v_des, be, cbf.LinearClassK(cfg.alpha)
            )
            v_star = saturate(v_star, cfg.v_max)
            h = be.h
        except NoObstacleInViewError:
            v_star, intervened, h = v_des, False, float("inf")
        self.min_h = min(self.min_h, h)
        msg = json.dumps({
            "type": "state",
            "t": round(self.t, 6),
            "x": float(self.state.position[0]),
            "y": float(self.state.position[1]),
            "vx": float(v_star[0]), "vy": float(v_star[1]),
            "vdes_x": float(v_des[0]), "vdes_y": float(v_des[1]),
            "h": float(h) if math.isfinite(h) else None,
            "intervened": bool(intervened),
            "scan": [round(float(r), 3) for r in s.ranges[::SCAN_DECIMATION]],
        })
        self.state = step(self.state, v_star, self.plant, self.dt)
        self.t += self.dt
        return msg

    async def _handler(self, websocket) -> None:
        self.clients.add(websocket)
        try:
            await websocket.send(_scene_message(self.spec))
            async for raw in websocket:
                self.mailbox.deposit(raw)
        except websockets.ConnectionClosed:
            pass
        finally:
            self.clients.discard(websocket)

    async def _loop(self) -> None:
        while True:
            started = asyncio.get_event_loop().time()
            msg = self.tick_state()
            if self.clients:
                websockets.broadcast(self.clients, msg)
            await asyncio.sleep(max(0.0, self.dt - (asyncio.get_event_loop().time() - started)))

    async def run(self, ready: Optional[asyncio.Event] = None) -> None:
        try:
            server = await websockets.serve(self._handler, "127.0.0.1", self.port)
        except OSError as e:
            raise SafeFilterError(f"cannot bind teleop port {self.port}: {e}") from e
        if ready is not None:
            ready.set()
        try:
            await self._loop()
        finally:
            server.close()
            await server.wait_closed()


def serve(scene_path: Union[str, Path], port: int = DEFAULT_PORT,
          tick_hz: float = 50.0) -> None:
    """Run the bridge until interrupted (blocking entry point for the CLI)."""
    server = TeleopServer(scene_path, port=port, tick_hz=tick_hz)
    print(f"teleop bridge on ws://127.0.0.1:{port} "
          f"({server.spec.name}, {tick_hz:g} Hz)")
    try:
        asyncio.run(server.run())
    except KeyboardInterrupt:
        print("teleop bridge stopped")
