/** Client-side mirror of the L-shaped corridor footprint.
 *
 * Used only for drag clamping and drawing; every dB number still comes
 * from the server. The footprint is the union of two axis-aligned
 * rectangles sharing the corner at the origin: the receiver arm
 * [0, L_R] x [0, l_R] and the transmitter arm [0, l_T] x [0, L_T + l_R].
 */

import type { XY } from "./view.js";

export interface Dims {
  L_T: number;
  L_R: number;
  l_T: number;
  l_R: number;
}

interface Rect {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

function arms(d: Dims): [Rect, Rect] {
  return [
    { x0: 0, y0: 0, x1: d.L_R, y1: d.l_R },
    { x0: 0, y0: 0, x1: d.l_T, y1: d.L_T + d.l_R },
  ];
}

export function contains(d: Dims, p: XY): boolean {
  return arms(d).some(
    (r) => p.x >= r.x0 && p.x <= r.x1 && p.y >= r.y0 && p.y <= r.y1,
  );
}

function clampToRect(r: Rect, p: XY, inset: number): XY {
  return {
    x: Math.min(Math.max(p.x, r.x0 + inset), r.x1 - inset),
    y: Math.min(Math.max(p.y, r.y0 + inset), r.y1 - inset),
  };
}

/** Nearest interior point; `clamped` reports whether p had to move. */
export function clampInside(
  d: Dims,
  p: XY,
  inset = 0.02,
): { point: XY; clamped: boolean } {
  if (contains(d, p)) {
    return { point: p, clamped: false };
  }
  let best: XY | null = null;
  let bestDist = Infinity;
  for (const r of arms(d)) {
    const c = clampToRect(r, p, inset);
    const dist = Math.hypot(c.x - p.x, c.y - p.y);
    if (dist < bestDist) {
      best = c;
      bestDist = dist;
    }
  }
  return { point: best as XY, clamped: true };
}
