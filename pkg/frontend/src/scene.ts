/** Floor-plan rendering: corridor, panel, markers, ray polylines. */

import type { PathDto, SimulateResponse } from "./api.js";
import type { Dims } from "./footprint.js";
import type { PlannerState } from "./state.js";
import type { ViewTransform, XY } from "./view.js";

function line(ctx: CanvasRenderingContext2D, view: ViewTransform, a: XY, b: XY): void {
  const sa = view.toScreen(a);
  const sb = view.toScreen(b);
  ctx.beginPath();
  ctx.moveTo(sa.x, sa.y);
  ctx.lineTo(sb.x, sb.y);
  ctx.stroke();
}

export function corridorOutline(d: Dims): XY[] {
  // Walked counterclockwise from the origin corner.
  return [
    { x: 0, y: 0 },
    { x: d.L_R, y: 0 },
    { x: d.L_R, y: d.l_R },
    { x: d.l_T, y: d.l_R },
    { x: d.l_T, y: d.L_T + d.l_R },
    { x: 0, y: d.L_T + d.l_R },
  ];
}

function drawCorridor(ctx: CanvasRenderingContext2D, view: ViewTransform, d: Dims): void {
  const pts = corridorOutline(d).map((p) => view.toScreen(p));
  ctx.beginPath();
  pts.forEach((p, i) => (i === 0 ? ctx.moveTo(p.x, p.y) : ctx.lineTo(p.x, p.y)));
  ctx.closePath();
  ctx.fillStyle = "#f7f5f0";
  ctx.fill();
  ctx.strokeStyle = "#44403a";
  ctx.lineWidth = 2.5;
  ctx.stroke();
}

/** Per-path stroke color: strong paths dark blue, weak ones washed out. */
export function pathColor(gainDb: number | null): string {
  if (gainDb === null) {
    return "rgba(120,120,120,0.25)";
  }
  const t = Math.min(Math.max((-gainDb - 60) / 60, 0), 1);
  const alpha = 0.9 - 0.65 * t;
  return `rgba(30,90,150,${alpha.toFixed(3)})`;
}

function drawPaths(ctx: CanvasRenderingContext2D, view: ViewTransform, paths: PathDto[]): void {
  for (const path of paths) {
    ctx.strokeStyle = pathColor(path.gain_db);
    ctx.lineWidth = path.walls.includes("panel") ? 2.5 : 1.5;
    ctx.beginPath();
    path.vertices.forEach(([x, y], i) => {
      const s = view.toScreen({ x, y });
      i === 0 ? ctx.moveTo(s.x, s.y) : ctx.lineTo(s.x, s.y);
    });
    ctx.stroke();
  }
}

function drawPanel(
  ctx: CanvasRenderingContext2D,
  view: ViewTransform,
  sim: SimulateResponse,
): void {
  const panel = sim.panel;
  ctx.strokeStyle = "#8a6d1f";
  ctx.lineWidth = 5;
  line(
    ctx,
    view,
    { x: panel.end_on_x[0], y: panel.end_on_x[1] },
    { x: panel.end_on_y[0], y: panel.end_on_y[1] },
  );
  const center = view.toScreen({ x: panel.center[0], y: panel.center[1] });
  ctx.fillStyle = "#8a6d1f";
  ctx.font = "12px system-ui, sans-serif";
  ctx.textAlign = "left";
  ctx.fillText(`α = ${sim.alpha_used_deg.toFixed(2)}°`, center.x + 10, center.y - 8);
}

function drawMarker(
  ctx: CanvasRenderingContext2D,
  view: ViewTransform,
  p: XY,
  label: string,
  color: string,
  warn = false,
): void {
  const s = view.toScreen(p);
  ctx.fillStyle = color;
  ctx.beginPath();
  ctx.arc(s.x, s.y, 7, 0, 2 * Math.PI);
  ctx.fill();
  ctx.strokeStyle = "#fff";
  ctx.lineWidth = 2;
  ctx.stroke();
  ctx.fillStyle = color;
  ctx.font = "bold 12px system-ui, sans-serif";
  ctx.textAlign = "center";
  ctx.fillText(label, s.x, s.y - 12);
  if (warn) {
    ctx.fillText("⚠", s.x + 16, s.y - 12);
  }
}

export function renderScene(
  ctx: CanvasRenderingContext2D,
  view: ViewTransform,
  state: PlannerState,
  pxWidth: number,
  pxHeight: number,
  heatmapLayer?: (ctx: CanvasRenderingContext2D) => void,
): void {
  ctx.clearRect(0, 0, pxWidth, pxHeight);
  drawCorridor(ctx, view, state.dims);
  heatmapLayer?.(ctx);
  const sim = state.lastSim;
  if (sim !== null) {
    drawPaths(ctx, view, sim.paths);
    if (state.panelEnabled) {
      drawPanel(ctx, view, sim);
    }
  }
  drawMarker(ctx, view, state.rx, "Rx", "#205e3b");
  drawMarker(ctx, view, state.tx, "Tx", "#7a2d2d", state.txClamped);
  if (state.stale && sim !== null) {
    ctx.fillStyle = "rgba(120,120,120,0.85)";
    ctx.font = "12px system-ui, sans-serif";
    ctx.textAlign = "left";
    ctx.fillText("updating…", 10, 18);
  }
}
