/**
 * Mapping between canvas pixels and the station's image coordinates.
 *
 * Station pixels are signed and centered: (0, 0) is the image center, x
 * right, y down, frame bounds at +-width/2 and +-height/2. Canvas y also
 * grows downward, so the map is a pure scale and shift, no flip. The image
 * rectangle is centered on the canvas at the largest scale that keeps a
 * margin all around; an integer-quantized canvas click maps back to station
 * pixels within 1 px as long as that scale stays above ~0.71.
 */

export interface Pt {
  x: number;
  y: number;
}

export interface ImageGeom {
  width: number;
  height: number;
}

export class Viewport {
  readonly scale: number;
  readonly cx: number;
  readonly cy: number;

  constructor(
    readonly canvasW: number,
    readonly canvasH: number,
    readonly image: ImageGeom,
    margin = 16,
  ) {
    if (canvasW <= 2 * margin || canvasH <= 2 * margin) {
      throw new RangeError("canvas smaller than its margins");
    }
    if (image.width <= 0 || image.height <= 0) {
      throw new RangeError("image geometry must be positive");
    }
    this.scale = Math.min(
      (canvasW - 2 * margin) / image.width,
      (canvasH - 2 * margin) / image.height,
    );
    this.cx = canvasW / 2;
    this.cy = canvasH / 2;
  }

  toCanvas(p: Pt): Pt {
    return { x: this.cx + p.x * this.scale, y: this.cy + p.y * this.scale };
  }

  toImage(q: Pt): Pt {
    return { x: (q.x - this.cx) / this.scale, y: (q.y - this.cy) / this.scale };
  }

  /** Frame membership in station pixels, bounds inclusive. */
  inImage(p: Pt): boolean {
    return Math.abs(p.x) <= this.image.width / 2 && Math.abs(p.y) <= this.image.height / 2;
  }

  /** Canvas-space rectangle of the image frame. */
  imageRect(): { x: number; y: number; w: number; h: number } {
    const tl = this.toCanvas({ x: -this.image.width / 2, y: -this.image.height / 2 });
    return {
      x: tl.x,
      y: tl.y,
      w: this.image.width * this.scale,
      h: this.image.height * this.scale,
    };
  }
}
