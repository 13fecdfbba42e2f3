/** Wire contract for the teleop bridge. Field names and types are frozen. */

export interface CircleObstacle {
  kind: "circle";
  center: [number, number];
  radius: number;
}

export interface SegmentObstacle {
  kind: "segment";
  a: [number, number];
  b: [number, number];
  thickness: number;
}

export type Obstacle = CircleObstacle | SegmentObstacle;

export interface SceneMsg {
  type: "scene";
  goal: [number, number];
  bounds: [number, number, number, number]; // xmin, ymin, xmax, ymax
  obstacles: Obstacle[];
  v_max: number;
  d_obs: number;
}

export interface StateMsg {
  type: "state";
  t: number;
  x: number;
  y: number;
  vx: number;
  vy: number;
  vdes_x: number;
  vdes_y: number;
  h: number | null;
  intervened: boolean;
  scan: number[];
}

export interface CommandMsg {
  type: "cmd";
  vx: number;
  vy: number;
  seq: number;
}

function num(v: unknown, name: string): number {
  if (typeof v !== "number" || !Number.isFinite(v)) {
    throw new Error(`field ${name} must be a finite number, got ${JSON.stringify(v)}`);
  }
  return v;
}

function pair(v: unknown, name: string): [number, number] {
  if (!Array.isArray(v) || v.length !== 2) throw new Error(`field ${name} must be [x, y]`);
  return [num(v[0], `${name}[0]`), num(v[1], `${name}[1]`)];
}

function parseObstacle(o: unknown, i: number): Obstacle {
  const obj = o as Record<string, unknown>;
  if (obj?.kind === "circle") {
    return { kind: "circle", center: pair(obj.center, `obstacles[${i}].center`),
             radius: num(obj.radius, `obstacles[${i}].radius`) };
  }
  if (obj?.kind === "segment") {
    return { kind: "segment", a: pair(obj.a, `obstacles[${i}].a`),
             b: pair(obj.b, `obstacles[${i}].b`),
             thickness: num(obj.thickness, `obstacles[${i}].thickness`) };
  }
  throw new Error(`obstacles[${i}]: unknown kind`);
}

export function parseScene(data: unknown): SceneMsg {
  const d = data as Record<string, unknown>;
  if (d?.type !== "scene") throw new Error("not a scene message");
  const bounds = d.bounds;
  if (!Array.isArray(bounds) || bounds.length !== 4) throw new Error("bounds must have 4 entries");
  return {
    type: "scene",
    goal: pair(d.goal, "goal"),
    bounds: [num(bounds[0], "bounds"), num(bounds[1], "bounds"),
             num(bounds[2], "bounds"), num(bounds[3], "bounds")],
    obstacles: (Array.isArray(d.obstacles) ? d.obstacles : []).map(parseObstacle),
    v_max: num(d.v_max, "v_max"),
    d_obs: num(d.d_obs, "d_obs"),
  };
}

export function parseState(data: unknown): StateMsg {
  const d = data as Record<string, unknown>;
  if (d?.type !== "state") throw new Error("not a state message");
  if (typeof d.intervened !== "boolean") throw new Error("intervened must be boolean");
  if (!Array.isArray(d.scan)) throw new Error("scan must be an array");
  return {
    type: "state",
    t: num(d.t, "t"),
    x: num(d.x, "x"),
    y: num(d.y, "y"),
    vx: num(d.vx, "vx"),
    vy: num(d.vy, "vy"),
    vdes_x: num(d.vdes_x, "vdes_x"),
    vdes_y: num(d.vdes_y, "vdes_y"),
    h: d.h === null ? null : num(d.h, "h"),
    intervened: d.intervened,
    scan: d.scan.map((r, i) => num(r, `scan[${i}]`)),
  };
}

/** Parse any server message (scene on connect, then a state stream). */
export function parseServerMessage(raw: string): SceneMsg | StateMsg {
  const data = JSON.parse(raw) as Record<string, unknown>;
  if (data?.type === "scene") return parseScene(data);
  if (data?.type === "state") return parseState(data);
  throw new Error(`unknown message type ${JSON.stringify(data?.type)}`);
}
