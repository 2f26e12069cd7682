import { describe, expect, it } from "vitest";
import { Viewport } from "../src/view.js";

describe("Viewport mapping", () => {
  const view = new Viewport(720, 540, { width: 640, height: 480 });

  it("image center sits at the canvas center", () => {
    expect(view.toCanvas({ x: 0, y: 0 })).toEqual({ x: 360, y: 270 });
    expect(view.toImage({ x: 360, y: 270 })).toEqual({ x: 0, y: 0 });
  });

  it("roundtrips exactly without quantization", () => {
    for (const p of [
      { x: 125, y: 50 },
      { x: -320, y: 240 },
      { x: 0.25, y: -239.75 },
    ]) {
      const back = view.toImage(view.toCanvas(p));
      expect(back.x).toBeCloseTo(p.x, 9);
      expect(back.y).toBeCloseTo(p.y, 9);
    }
  });

  it("y grows downward on both sides of the map", () => {
    const below = view.toCanvas({ x: 0, y: 100 });
    expect(below.y).toBeGreaterThan(view.cy);
  });

  it("frame membership is bounds inclusive in station pixels", () => {
    expect(view.inImage({ x: 320, y: 240 })).toBe(true);
    expect(view.inImage({ x: -320, y: -240 })).toBe(true);
    expect(view.inImage({ x: 320.5, y: 0 })).toBe(false);
    expect(view.inImage({ x: 0, y: -240.5 })).toBe(false);
  });

  it("image rectangle is centered and scaled", () => {
    const rect = view.imageRect();
    expect(rect.w).toBeCloseTo(640 * view.scale, 9);
    expect(rect.h).toBeCloseTo(480 * view.scale, 9);
    expect(rect.x + rect.w / 2).toBeCloseTo(360, 9);
    expect(rect.y + rect.h / 2).toBeCloseTo(270, 9);
    expect(rect.x).toBeGreaterThanOrEqual(16);
    expect(rect.y).toBeGreaterThanOrEqual(16);
  });

  it("rejects degenerate geometry", () => {
    expect(() => new Viewport(20, 540, { width: 640, height: 480 })).toThrow(RangeError);
    expect(() => new Viewport(720, 540, { width: 0, height: 480 })).toThrow(RangeError);
  });

  // A mouse click lands on an integer canvas pixel. Whatever point the
  // scene drew there must map back within 1 station pixel, for every image
  // geometry a scenario can reasonably configure.
  it("integer-quantized clicks stay within 1 px of the drawn position", () => {
    for (const image of [
      { width: 640, height: 480 },
      { width: 800, height: 600 },
    ]) {
      const v = new Viewport(720, 540, image);
      let worst = 0;
      for (let x = -image.width / 2; x <= image.width / 2; x += image.width / 37) {
        for (let y = -image.height / 2; y <= image.height / 2; y += image.height / 29) {
          const p = { x: x + 0.37, y: y - 0.21 };
          if (!v.inImage(p)) continue;
          const q = v.toCanvas(p);
          const clicked = { x: Math.round(q.x), y: Math.round(q.y) };
          const back = v.toImage(clicked);
          worst = Math.max(worst, Math.abs(back.x - p.x), Math.abs(back.y - p.y));
        }
      }
      expect(worst).toBeLessThanOrEqual(1.0);
    }
  });
});
