/** Browser entry point: wires the canvas, keyboard, and websocket together. */

import { TeleopClient, bridgeUrl } from "./client.js";
import { render } from "./render.js";
import { ViewModel } from "./viewmodel.js";

function start(): void {
  const canvas = document.getElementById("arena") as HTMLCanvasElement | null;
  if (!canvas) throw new Error("missing #arena canvas");
  const ctx = canvas.getContext("2d");
  if (!ctx) throw new Error("2d context unavailable");

  const vm = new ViewModel();
  const client = new TeleopClient(bridgeUrl(window.location.search), vm);

  window.addEventListener("keydown", (e) => {
    vm.keyDown(e.key);
    if (e.key.startsWith("Arrow")) e.preventDefault();
  });
  window.addEventListener("keyup", (e) => vm.keyUp(e.key));
  window.addEventListener("blur", () => vm.releaseAll());
  window.addEventListener("beforeunload", () => client.close());

  const resize = (): void => {
    canvas.width = window.innerWidth;
    canvas.height = window.innerHeight;
  };
  window.addEventListener("resize", resize);
  resize();

  const frame = (): void => {
    render(ctx, vm, canvas.width, canvas.height);
    requestAnimationFrame(frame);
  };
  requestAnimationFrame(frame);

  client.connect();
}

start();
