/** Planner state and the pure transitions the interaction layer applies.
 *
 * The state never computes physics: dB values land here verbatim from the
 * API and are only formatted for display.
 */

import type { SimulateResponse } from "./api.js";
import type { Dims } from "./footprint.js";
import { clampInside } from "./footprint.js";
import type { XY } from "./view.js";

export interface PlannerState {
  dims: Dims;
  tx: XY;
  rx: XY;
  panelEnabled: boolean;
  /** null means "use the solved tilt". */
  alphaOverrideDeg: number | null;
  lastSim: SimulateResponse | null;
  /** lastSim no longer matches the current geometry or a request failed. */
  stale: boolean;
  txClamped: boolean;
  banner: string | null;
}

export function initialState(dims: Dims, tx: XY, rx: XY): PlannerState {
  return {
    dims,
    tx,
    rx,
    panelEnabled: true,
    alphaOverrideDeg: null,
    lastSim: null,
    stale: true,
    txClamped: false,
    banner: null,
  };
}

/** Optimistic geometry move; marks readouts stale until a response lands. */
export function withMarker(state: PlannerState, entity: "tx" | "rx", target: XY): PlannerState {
  const { point, clamped } = clampInside(state.dims, target);
  return {
    ...state,
    [entity]: point,
    txClamped: entity === "tx" ? clamped : state.txClamped,
    stale: true,
  };
}

export function withPanelEnabled(state: PlannerState, enabled: boolean): PlannerState {
  return { ...state, panelEnabled: enabled, stale: true };
}

export function withAlphaOverride(state: PlannerState, deg: number | null): PlannerState {
  return { ...state, alphaOverrideDeg: deg, stale: true };
}

/** A response for the current geometry arrived; adopt it verbatim. */
export function withSimResult(state: PlannerState, sim: SimulateResponse): PlannerState {
  return { ...state, lastSim: sim, stale: false, banner: null };
}

/** Request failed: keep the last good numbers, flag them, raise a banner. */
export function withFailure(state: PlannerState, message: string): PlannerState {
  return { ...state, stale: true, banner: message };
}

const DB = (v: number): string => `${v.toFixed(2)} dB`;

/** Display formatting only; the number itself is untouched API output. */
export function formatPathLoss(sim: SimulateResponse | null): string {
  if (sim === null) {
    return "--";
  }
  if (sim.path_loss_db === null) {
    return "below measurable";
  }
  return DB(sim.path_loss_db);
}

export function formatAlpha(state: PlannerState): string {
  if (state.alphaOverrideDeg !== null) {
    return `${state.alphaOverrideDeg.toFixed(2)}° (manual)`;
  }
  if (state.lastSim !== null) {
    return `${state.lastSim.angles.alpha_deg.toFixed(3)}° (solved)`;
  }
  return "--";
}
