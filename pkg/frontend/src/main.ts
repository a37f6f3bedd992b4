/** Browser wiring: canvas interaction, buttons, readouts. */

import type { ApiClient, CampaignResponse, CoverageResponse, SimulateRequest } from "./api.js";
import { createClient } from "./api.js";
import { drawCampaignChart } from "./chart.js";
import { drawHeatmap } from "./heatmap.js";
import { Debouncer, LatestWins } from "./net.js";
import {
  formatAlpha,
  formatPathLoss,
  initialState,
  withAlphaOverride,
  withFailure,
  withMarker,
  withPanelEnabled,
  withSimResult,
  type PlannerState,
} from "./state.js";
import { renderScene } from "./scene.js";
import { ViewTransform, type XY } from "./view.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (el === null) {
    throw new Error(`missing element #${id}`);
  }
  return el as T;
};

const planCanvas = $<HTMLCanvasElement>("plan");
const chartCanvas = $<HTMLCanvasElement>("chart");
const planCtx = planCanvas.getContext("2d") as CanvasRenderingContext2D;
const chartCtx = chartCanvas.getContext("2d") as CanvasRenderingContext2D;

// Served by `mmwreflect serve --ui-dir`, so same-origin by default;
// ?api=http://host:port points elsewhere during development.
const apiBase = new URLSearchParams(window.location.search).get("api") ?? "";
const api: ApiClient = createClient(apiBase);

const debounce = new Debouncer(100);
const simStream = new LatestWins();

let state: PlannerState;
let view: ViewTransform;
let coverage: CoverageResponse | null = null;
let dragging: "tx" | "rx" | "panel" | null = null;

function simulateBody(s: PlannerState): SimulateRequest {
  return {
    tx: [s.tx.x, s.tx.y],
    panel_enabled: s.panelEnabled,
    ...(s.alphaOverrideDeg === null ? {} : { alpha_override_deg: s.alphaOverrideDeg }),
  };
}

function refreshReadouts(): void {
  $("readout-pl").textContent = formatPathLoss(state.lastSim);
  $("readout-alpha").textContent = formatAlpha(state);
  const sim = state.lastSim;
  $("readout-los").textContent =
    sim === null ? "--" : sim.los ? "line of sight" : "blocked";
  $("readout-paths").textContent = sim === null ? "--" : String(sim.n_paths);
  const banner = $("banner");
  banner.textContent = state.banner ?? "";
  banner.style.display = state.banner === null ? "none" : "block";
  const staleBadge = $("stale");
  staleBadge.style.display = state.stale && state.lastSim !== null ? "inline" : "none";
}

function redraw(): void {
  const layer =
    coverage === null ? undefined : (ctx: CanvasRenderingContext2D) => drawHeatmap(ctx, coverage as CoverageResponse, view);
  renderScene(planCtx, view, state, planCanvas.width, planCanvas.height, layer);
  refreshReadouts();
}

function requestSimulate(): void {
  const body = simulateBody(state);
  simStream.run(
    () => api.simulate(body),
    (sim) => {
      state = withSimResult(state, sim);
      redraw();
    },
    (error) => {
      state = withFailure(state, `simulation failed: ${String(error)}`);
      redraw();
    },
  );
}

function geometryChanged(): void {
  coverage = null;
  redraw();
  debounce.schedule(requestSimulate);
}

function pointerWorld(event: PointerEvent): XY {
  const rect = planCanvas.getBoundingClientRect();
  return view.toWorld({ x: event.clientX - rect.left, y: event.clientY - rect.top });
}

function hit(event: PointerEvent): "tx" | "rx" | "panel" | null {
  const p = pointerWorld(event);
  const r = 12 / view.scale;
  if (Math.hypot(p.x - state.tx.x, p.y - state.tx.y) < r) {
    return "tx";
  }
  if (Math.hypot(p.x - state.rx.x, p.y - state.rx.y) < r) {
    return "rx";
  }
  const panel = state.lastSim?.panel;
  if (panel && state.panelEnabled) {
    const c = { x: panel.center[0], y: panel.center[1] };
    if (Math.hypot(p.x - c.x, p.y - c.y) < r + panel.width_m / 2) {
      return "panel";
    }
  }
  return null;
}

planCanvas.addEventListener("pointerdown", (event) => {
  dragging = hit(event);
  if (dragging !== null) {
    planCanvas.setPointerCapture(event.pointerId);
  }
});

planCanvas.addEventListener("pointermove", (event) => {
  if (dragging === null) {
    return;
  }
  const p = pointerWorld(event);
  if (dragging === "panel") {
    // The tilt handle: pointer direction from the corner sets alpha.
    const deg = (Math.atan2(p.x, p.y) * 180) / Math.PI;
    state = withAlphaOverride(state, Math.min(Math.max(deg, 5), 85));
  } else {
    state = withMarker(state, dragging, p);
  }
  geometryChanged();
});

planCanvas.addEventListener("pointerup", () => {
  dragging = null;
});

$("toggle-panel").addEventListener("click", () => {
  state = withPanelEnabled(state, !state.panelEnabled);
  geometryChanged();
});

$("optimal-alpha").addEventListener("click", () => {
  state = withAlphaOverride(state, null);
  geometryChanged();
});

$("run-campaign").addEventListener("click", () => {
  void api.campaign().then(
    (result: CampaignResponse) => {
      drawCampaignChart(chartCtx, result, chartCanvas.width, chartCanvas.height);
    },
    (error) => {
      state = withFailure(state, `campaign failed: ${String(error)}`);
      redraw();
    },
  );
});

$("run-coverage").addEventListener("click", () => {
  void api
    .coverage(state.panelEnabled, 0.25, state.alphaOverrideDeg ?? undefined)
    .then(
      (result) => {
        coverage = result;
        redraw();
      },
      (error) => {
        state = withFailure(state, `coverage failed: ${String(error)}`);
        redraw();
      },
    );
});

$("clear-coverage").addEventListener("click", () => {
  coverage = null;
  redraw();
});

async function boot(): Promise<void> {
  const config = await api.defaultConfig();
  const d = config.layout;
  const dims = { L_T: d.L_T, L_R: d.L_R, l_T: d.l_T, l_R: d.l_R };
  const txAxis = config.tx.axis_x_m ?? dims.l_T / 2;
  const tx: XY = { x: txAxis, y: dims.L_T + dims.l_R };
  const rx: XY = config.rx.position
    ? { x: config.rx.position[0], y: config.rx.position[1] }
    : { x: dims.L_R, y: dims.l_R / 2 };
  state = initialState(dims, tx, rx);
  view = ViewTransform.fit(dims.L_R, dims.L_T + dims.l_R, planCanvas.width, planCanvas.height);
  redraw();
  requestSimulate();
}

void boot().catch((error) => {
  const banner = $("banner");
  banner.textContent = `cannot reach the planner API: ${String(error)}`;
  banner.style.display = "block";
});
