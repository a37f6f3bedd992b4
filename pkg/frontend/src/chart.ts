/** Campaign chart: both arms vs position index, floor line, argmax badge.
 *
 * Layout math is split out as pure helpers so the mapping is testable
 * without a canvas.
 */

import type { CampaignResponse } from "./api.js";

export interface ChartFrame {
  left: number;
  top: number;
  width: number;
  height: number;
  dbMin: number;
  dbMax: number;
  count: number;
}

/** dB range covering both series plus the floor, padded by 3 dB. */
export function chartFrame(
  response: CampaignResponse,
  pxWidth: number,
  pxHeight: number,
): ChartFrame {
  const values: number[] = [];
  for (const r of response.records) {
    if (r.pl_with_db !== null) values.push(r.pl_with_db);
    if (r.pl_without_db !== null) values.push(r.pl_without_db);
  }
  const floor = response.config.noise_floor_db;
  if (floor !== null) values.push(floor);
  const lo = Math.min(...values) - 3;
  const hi = Math.max(...values) + 3;
  return {
    left: 44,
    top: 14,
    width: pxWidth - 58,
    height: pxHeight - 46,
    dbMin: lo,
    dbMax: hi,
    count: response.records.length,
  };
}

export function indexToX(frame: ChartFrame, index: number): number {
  const t = frame.count > 1 ? (index - 1) / (frame.count - 1) : 0.5;
  return frame.left + t * frame.width;
}

/** Higher loss is worse, so it goes down: dbMin maps to the top. */
export function dbToY(frame: ChartFrame, db: number): number {
  const t = (db - frame.dbMin) / (frame.dbMax - frame.dbMin);
  return frame.top + t * frame.height;
}

export function seriesPoints(
  frame: ChartFrame,
  records: CampaignResponse["records"],
  arm: "pl_with_db" | "pl_without_db",
): { x: number; y: number }[] {
  const points: { x: number; y: number }[] = [];
  for (const r of records) {
    const v = r[arm];
    if (v !== null) {
      points.push({ x: indexToX(frame, r.index), y: dbToY(frame, v) });
    }
  }
  return points;
}

function polyline(ctx: CanvasRenderingContext2D, pts: { x: number; y: number }[]): void {
  ctx.beginPath();
  pts.forEach((p, i) => (i === 0 ? ctx.moveTo(p.x, p.y) : ctx.lineTo(p.x, p.y)));
  ctx.stroke();
}

export function drawCampaignChart(
  ctx: CanvasRenderingContext2D,
  response: CampaignResponse,
  pxWidth: number,
  pxHeight: number,
): void {
  const frame = chartFrame(response, pxWidth, pxHeight);
  ctx.clearRect(0, 0, pxWidth, pxHeight);
  ctx.font = "11px system-ui, sans-serif";

  ctx.strokeStyle = "#c8c8c8";
  ctx.lineWidth = 1;
  ctx.strokeRect(frame.left, frame.top, frame.width, frame.height);
  ctx.fillStyle = "#666";
  ctx.textAlign = "right";
  for (const db of [frame.dbMin + 3, frame.dbMax - 3]) {
    ctx.fillText(db.toFixed(0), frame.left - 6, dbToY(frame, db) + 4);
  }
  ctx.textAlign = "center";
  for (const r of response.records) {
    if (r.index === 1 || r.index % 4 === 0) {
      ctx.fillText(String(r.index), indexToX(frame, r.index), frame.top + frame.height + 14);
    }
  }

  const floor = response.config.noise_floor_db;
  if (floor !== null) {
    const y = dbToY(frame, floor);
    ctx.strokeStyle = "#999";
    ctx.setLineDash([5, 4]);
    polyline(ctx, [
      { x: frame.left, y },
      { x: frame.left + frame.width, y },
    ]);
    ctx.setLineDash([]);
    ctx.textAlign = "left";
    ctx.fillText(`floor ${floor.toFixed(0)} dB`, frame.left + 4, y - 4);
  }

  ctx.lineWidth = 2;
  ctx.strokeStyle = "#b5543c";
  polyline(ctx, seriesPoints(frame, response.records, "pl_without_db"));
  ctx.strokeStyle = "#2d6e9e";
  polyline(ctx, seriesPoints(frame, response.records, "pl_with_db"));

  const best = response.improvement_argmax;
  const record = response.records.find((r) => r.index === best.index);
  if (record && record.pl_with_db !== null && best.improvement_db !== null) {
    const x = indexToX(frame, best.index);
    const y = dbToY(frame, record.pl_with_db);
    ctx.fillStyle = "#2d6e9e";
    ctx.beginPath();
    ctx.arc(x, y, 4, 0, 2 * Math.PI);
    ctx.fill();
    ctx.textAlign = "center";
    ctx.fillStyle = "#1c4663";
    ctx.fillText(`+${best.improvement_db.toFixed(1)} dB @ ${best.index}`, x, y + 18);
  }

  ctx.textAlign = "left";
  ctx.fillStyle = "#b5543c";
  ctx.fillText("without panel", frame.left + frame.width - 92, frame.top + 14);
  ctx.fillStyle = "#2d6e9e";
  ctx.fillText("with panel", frame.left + frame.width - 92, frame.top + 28);
}
