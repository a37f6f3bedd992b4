/** Coverage heatmap over the floor plan, drawn in world coordinates. */

import type { CoverageResponse } from "./api.js";
import type { ViewTransform } from "./view.js";

/** Blue (low loss) to red (high loss); t outside [0,1] is clamped. */
export function rampColor(t: number): string {
  const u = Math.min(Math.max(t, 0), 1);
  const r = Math.round(40 + 200 * u);
  const g = Math.round(90 + 60 * (1 - Math.abs(2 * u - 1)));
  const b = Math.round(220 - 180 * u);
  return `rgb(${r},${g},${b})`;
}

export function lossRange(coverage: CoverageResponse): { lo: number; hi: number } {
  let lo = Infinity;
  let hi = -Infinity;
  for (const row of coverage.pl_db) {
    for (const v of row) {
      if (v !== null) {
        lo = Math.min(lo, v);
        hi = Math.max(hi, v);
      }
    }
  }
  if (!Number.isFinite(lo)) {
    lo = 0;
    hi = 1;
  }
  if (hi - lo < 1e-9) {
    hi = lo + 1;
  }
  return { lo, hi };
}

export function drawHeatmap(
  ctx: CanvasRenderingContext2D,
  coverage: CoverageResponse,
  view: ViewTransform,
  alpha = 0.75,
): void {
  const { lo, hi } = lossRange(coverage);
  const stepX = coverage.xs.length > 1 ? coverage.xs[1] - coverage.xs[0] : 0.25;
  const stepY = coverage.ys.length > 1 ? coverage.ys[1] - coverage.ys[0] : 0.25;
  ctx.save();
  ctx.globalAlpha = alpha;
  coverage.ys.forEach((cy, j) => {
    coverage.xs.forEach((cx, i) => {
      const v = coverage.pl_db[j][i];
      if (v === null) {
        return;
      }
      const a = view.toScreen({ x: cx - stepX / 2, y: cy + stepY / 2 });
      const b = view.toScreen({ x: cx + stepX / 2, y: cy - stepY / 2 });
      ctx.fillStyle = rampColor((v - lo) / (hi - lo));
      ctx.fillRect(a.x, a.y, b.x - a.x, b.y - a.y);
    });
  });
  ctx.restore();
}
