/** Pure UI state: last server messages plus local input. Rendering is a
 * function of this object; nothing here mutates simulation truth. */

import type { CommandMsg, SceneMsg, StateMsg } from "./protocol.js";

export type ConnectionStatus = "connecting" | "connected" | "disconnected";

const KEY_VECTORS: Record<string, [number, number]> = {
  // world-frame velocity: +x right / east, +y up / north
  w: [0, 1], arrowup: [0, 1],
  s: [0, -1], arrowdown: [0, -1],
  a: [-1, 0], arrowleft: [-1, 0],
  d: [1, 0], arrowright: [1, 0],
};

export class ViewModel {
  scene: SceneMsg | null = null;
  state: StateMsg | null = null;
  status: ConnectionStatus = "connecting";
  magnitude = 1.0; // fraction of scene v_max commanded by a held key
  private held = new Set<string>();
  private seq = 0;

  keyDown(key: string): void {
    const k = key.toLowerCase();
    if (k in KEY_VECTORS) this.held.add(k);
  }

  keyUp(key: string): void {
    this.held.delete(key.toLowerCase());
  }

  releaseAll(): void {
    this.held.clear();
  }

  /** World-frame command from held keys, scaled to the scene speed limit. */
  commandVector(): [number, number] {
    let x = 0;
    let y = 0;
    for (const k of this.held) {
      const [dx, dy] = KEY_VECTORS[k];
      x += dx;
      y += dy;
    }
    const norm = Math.hypot(x, y);
    if (norm === 0) return [0, 0];
    const speed = (this.scene?.v_max ?? 1.0) * this.magnitude;
    return [(x / norm) * speed, (y / norm) * speed];
  }

  /** Next outgoing command; seq strictly increases across the session. */
  nextCommand(): CommandMsg {
    const [vx, vy] = this.commandVector();
    this.seq += 1;
    return { type: "cmd", vx, vy, seq: this.seq };
  }

  get lastSeq(): number {
    return this.seq;
  }
}
