/** Canvas rendering: arena, obstacles, robot, commanded vs filtered velocity
 * arrows, barrier gauge, and intervention indicator. Pure function of the
 * view model — works against any CanvasRenderingContext2D-compatible object,
 * which keeps it testable without a browser. */

import type { SceneMsg, StateMsg } from "./protocol.js";
import type { ViewModel } from "./viewmodel.js";

/** The subset of CanvasRenderingContext2D the renderer needs. */
export interface Ctx2D {
  fillStyle: string | CanvasGradient | CanvasPattern;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  font: string;
  clearRect(x: number, y: number, w: number, h: number): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  strokeRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  closePath(): void;
  stroke(): void;
  fill(): void;
  fillText(text: string, x: number, y: number): void;
}

export interface Transform {
  toPx(wx: number, wy: number): [number, number];
  scale: number;
}

export function makeTransform(
  bounds: [number, number, number, number],
  width: number,
  height: number,
  margin = 10,
): Transform {
  const [xmin, ymin, xmax, ymax] = bounds;
  const scale = Math.min(
    (width - 2 * margin) / (xmax - xmin),
    (height - 2 * margin) / (ymax - ymin),
  );
  return {
    scale,
    toPx: (wx, wy) => [margin + (wx - xmin) * scale, margin + (ymax - wy) * scale],
  };
}

const COLORS = {
  background: "#111418",
  arena: "#1b2026",
  obstacle: "#5b6570",
  goal: "#3fb950",
  robot: "#58a6ff",
  commanded: "#d29922",
  filtered: "#58a6ff",
  scan: "#2f81f733",
  safe: "#3fb950",
  warning: "#f85149",
  text: "#c9d1d9",
};

function drawArrow(ctx: Ctx2D, x0: number, y0: number, dx: number, dy: number, color: string): void {
  const len = Math.hypot(dx, dy);
  if (len < 1e-6) return;
  const x1 = x0 + dx;
  const y1 = y0 + dy;
  ctx.strokeStyle = color;
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.moveTo(x0, y0);
  ctx.lineTo(x1, y1);
  ctx.stroke();
  const head = Math.min(6, len / 3);
  const ang = Math.atan2(dy, dx);
  ctx.beginPath();
  ctx.moveTo(x1, y1);
  ctx.lineTo(x1 - head * Math.cos(ang - 0.4), y1 - head * Math.sin(ang - 0.4));
  ctx.moveTo(x1, y1);
  ctx.lineTo(x1 - head * Math.cos(ang + 0.4), y1 - head * Math.sin(ang + 0.4));
  ctx.stroke();
}

function drawScene(ctx: Ctx2D, scene: SceneMsg, tf: Transform): void {
  for (const obs of scene.obstacles) {
    if (obs.kind === "circle") {
      const [cx, cy] = tf.toPx(obs.center[0], obs.center[1]);
      ctx.fillStyle = COLORS.obstacle;
      ctx.beginPath();
      ctx.arc(cx, cy, Math.max(obs.radius * tf.scale, 2), 0, 2 * Math.PI);
      ctx.fill();
    } else {
      const [ax, ay] = tf.toPx(obs.a[0], obs.a[1]);
      const [bx, by] = tf.toPx(obs.b[0], obs.b[1]);
      ctx.strokeStyle = COLORS.obstacle;
      ctx.lineWidth = Math.max(obs.thickness * tf.scale, 2);
      ctx.beginPath();
      ctx.moveTo(ax, ay);
      ctx.lineTo(bx, by);
      ctx.stroke();
    }
  }
  const [gx, gy] = tf.toPx(scene.goal[0], scene.goal[1]);
  ctx.fillStyle = COLORS.goal;
  ctx.beginPath();
  ctx.moveTo(gx, gy - 7);
  ctx.lineTo(gx + 6, gy + 5);
  ctx.lineTo(gx - 6, gy + 5);
  ctx.closePath();
  ctx.fill();
}

function drawScan(ctx: Ctx2D, state: StateMsg, tf: Transform): void {
  const n = state.scan.length;
  if (n === 0) return;
  const [rx, ry] = tf.toPx(state.x, state.y);
  ctx.strokeStyle = COLORS.scan;
  ctx.lineWidth = 1;
  for (let i = 0; i < n; i++) {
    // bridge scans the full circle; decimated beams stay evenly spaced
    const ang = -Math.PI + (2 * Math.PI * i) / n;
    const r = state.scan[i] * tf.scale;
    ctx.beginPath();
    ctx.moveTo(rx, ry);
    ctx.lineTo(rx + r * Math.cos(ang), ry - r * Math.sin(ang));
    ctx.stroke();
  }
}

function drawGauge(ctx: Ctx2D, state: StateMsg, width: number): void {
  const x = 10;
  const y = 10;
  const w = Math.min(180, width - 20);
  const hVal = state.h;
  const warning = state.intervened || (hVal !== null && hVal < 0.1);
  ctx.fillStyle = "#00000066";
  ctx.fillRect(x, y, w, 34);
  ctx.fillStyle = warning ? COLORS.warning : COLORS.safe;
  const frac = hVal === null ? 1 : Math.max(0, Math.min(1, hVal / 2));
  ctx.fillRect(x + 4, y + 18, (w - 8) * frac, 10);
  ctx.strokeStyle = COLORS.text;
  ctx.lineWidth = 1;
  ctx.strokeRect(x + 4, y + 18, w - 8, 10);
  ctx.font = "12px sans-serif";
  ctx.fillStyle = warning ? COLORS.warning : COLORS.text;
  const label = hVal === null ? "h: clear" : `h: ${hVal.toFixed(2)} m`;
  ctx.fillText(warning ? `${label}  FILTER ACTIVE` : label, x + 4, y + 13);
}

/** Render one frame. Safe to call with partial state (before scene/state). */
export function render(ctx: Ctx2D, vm: ViewModel, width: number, height: number): void {
  ctx.fillStyle = COLORS.background;
  ctx.clearRect(0, 0, width, height);
  ctx.fillRect(0, 0, width, height);

  if (vm.status !== "connected" || !vm.scene) {
    ctx.fillStyle = COLORS.text;
    ctx.font = "14px sans-serif";
    ctx.fillText(vm.status === "disconnected" ? "disconnected — retrying…" : "connecting…",
                 12, 24);
    return;
  }

  const tf = makeTransform(vm.scene.bounds, width, height);
  const [xmin, ymin, xmax, ymax] = vm.scene.bounds;
  const [ax, ay] = tf.toPx(xmin, ymax);
  const [bx, by] = tf.toPx(xmax, ymin);
  ctx.fillStyle = COLORS.arena;
  ctx.fillRect(ax, ay, bx - ax, by - ay);
  drawScene(ctx, vm.scene, tf);

  const state = vm.state;
  if (!state) return;
  drawScan(ctx, state, tf);

  const [rx, ry] = tf.toPx(state.x, state.y);
  ctx.fillStyle = state.intervened ? COLORS.warning : COLORS.robot;
  ctx.beginPath();
  ctx.arc(rx, ry, 6, 0, 2 * Math.PI);
  ctx.fill();

  // commanded (desired) and filtered velocity arrows; they coincide
  // visually exactly when the filter is not intervening
  const arrowScale = tf.scale * 0.8;
  drawArrow(ctx, rx, ry, state.vdes_x * arrowScale, -state.vdes_y * arrowScale, COLORS.commanded);
  drawArrow(ctx, rx, ry, state.vx * arrowScale, -state.vy * arrowScale, COLORS.filtered);

  drawGauge(ctx, state, width);
}

/** True when the two arrows drawn for a state visibly diverge. */
export function arrowsDiverge(state: StateMsg, tolerance = 1e-9): boolean {
  return (
    Math.hypot(state.vx - state.vdes_x, state.vy - state.vdes_y) > tolerance
  );
}
