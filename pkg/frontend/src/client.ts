/** Websocket session: subscribes to the state stream, sends commands at a
 * fixed rate while keys are held, and retries with backoff on disconnect. */

import { parseServerMessage } from "./protocol.js";
import type { ViewModel } from "./viewmodel.js";

export interface ClientOptions {
  commandHz?: number;
  maxBackoffMs?: number;
  /** Injectable for tests. */
  socketFactory?: (url: string) => WebSocket;
}

export class TeleopClient {
  private ws: WebSocket | null = null;
  private commandTimer: ReturnType<typeof setInterval> | null = null;
  private retryTimer: ReturnType<typeof setTimeout> | null = null;
  private backoffMs = 500;
  private closed = false;
  private readonly commandHz: number;
  private readonly maxBackoffMs: number;
  private readonly socketFactory: (url: string) => WebSocket;

  constructor(
    private readonly url: string,
    private readonly vm: ViewModel,
    options: ClientOptions = {},
  ) {
    this.commandHz = options.commandHz ?? 20;
    this.maxBackoffMs = options.maxBackoffMs ?? 5000;
    this.socketFactory = options.socketFactory ?? ((u) => new WebSocket(u));
  }

  connect(): void {
    if (this.closed) return;
    this.vm.status = "connecting";
    const ws = this.socketFactory(this.url);
    this.ws = ws;

    ws.onopen = () => {
      this.vm.status = "connected";
      this.backoffMs = 500;
      this.startCommandLoop();
    };
    ws.onmessage = (event: MessageEvent) => {
      try {
        const msg = parseServerMessage(String(event.data));
        if (msg.type === "scene") this.vm.scene = msg;
        else this.vm.state = msg;
      } catch {
        // malformed server frame: ignore, never throw into the event loop
      }
    };
    ws.onclose = () => this.handleDisconnect();
    ws.onerror = () => {
      // onclose follows; nothing to do here
    };
  }

  private handleDisconnect(): void {
    this.stopCommandLoop();
    this.vm.status = "disconnected";
    this.vm.releaseAll();
    if (this.closed) return;
    this.retryTimer = setTimeout(() => this.connect(), this.backoffMs);
    this.backoffMs = Math.min(this.backoffMs * 2, this.maxBackoffMs);
  }

  private startCommandLoop(): void {
    this.stopCommandLoop();
    this.commandTimer = setInterval(() => {
      if (this.ws && this.ws.readyState === this.ws.OPEN) {
        this.ws.send(JSON.stringify(this.vm.nextCommand()));
      }
    }, 1000 / this.commandHz);
  }

  private stopCommandLoop(): void {
    if (this.commandTimer !== null) {
      clearInterval(this.commandTimer);
      this.commandTimer = null;
    }
  }

  close(): void {
    this.closed = true;
    this.stopCommandLoop();
    if (this.retryTimer !== null) clearTimeout(this.retryTimer);
    this.ws?.close();
  }
}

/** Bridge URL from ?bridge=… or the default local port. */
export function bridgeUrl(search: string): string {
  const fromQuery = new URLSearchParams(search).get("bridge");
  return fromQuery ?? "ws://localhost:8090";
}
