/** Screen/world mapping for the floor-plan canvas. World y points up. */

export interface XY {
  x: number;
  y: number;
}

export class ViewTransform {
  constructor(
    readonly scale: number,
    readonly offsetX: number,
    readonly offsetY: number,
  ) {
    if (!(scale > 0) || !Number.isFinite(offsetX) || !Number.isFinite(offsetY)) {
      throw new Error(`invalid view transform: ${scale}, ${offsetX}, ${offsetY}`);
    }
  }

  toScreen(p: XY): XY {
    return { x: p.x * this.scale + this.offsetX, y: this.offsetY - p.y * this.scale };
  }

  toWorld(s: XY): XY {
    return { x: (s.x - this.offsetX) / this.scale, y: (this.offsetY - s.y) / this.scale };
  }

  /** Pixels per meter stays, the view slides by a screen-space delta. */
  panned(dxPx: number, dyPx: number): ViewTransform {
    return new ViewTransform(this.scale, this.offsetX + dxPx, this.offsetY + dyPx);
  }

  /** Rescale about a screen point so the world point under it stays put. */
  zoomedAt(anchor: XY, factor: number): ViewTransform {
    const world = this.toWorld(anchor);
    const scale = this.scale * factor;
    return new ViewTransform(
      scale,
      anchor.x - world.x * scale,
      anchor.y + world.y * scale,
    );
  }

  /** Fit a world box (origin at 0,0) into a pixel box with a margin. */
  static fit(worldW: number, worldH: number, pxW: number, pxH: number, marginPx = 24): ViewTransform {
    const scale = Math.min((pxW - 2 * marginPx) / worldW, (pxH - 2 * marginPx) / worldH);
    const offsetX = (pxW - worldW * scale) / 2;
    const offsetY = pxH - (pxH - worldH * scale) / 2;
    return new ViewTransform(scale, offsetX, offsetY);
  }
}
