/**
 * 2-D heat-map fallback, synchronized with the 3-D view's color key.
 * Pixel synthesis is a pure function so it can be tested without a canvas.
 */

import { colorFor } from "./colormap.js";

/** RGBA bytes for an n_y x n_x grid, one pixel per grid cell, row 0 on top */
export function heatmapPixels(
  z: number[][],
  bounds: readonly [number, number],
): Uint8ClampedArray<ArrayBuffer> {
  const ny = z.length;
  const nx = z[0].length;
  const out = new Uint8ClampedArray(new ArrayBuffer(nx * ny * 4));
  let k = 0;
  for (let i = ny - 1; i >= 0; i--) {
    for (let j = 0; j < nx; j++) {
      const [r, g, b] = colorFor(z[i][j], bounds);
      out[k] = r;
      out[k + 1] = g;
      out[k + 2] = b;
      out[k + 3] = 255;
      k += 4;
    }
  }
  return out;
}

export function paintHeatmap(
  canvas: HTMLCanvasElement,
  z: number[][],
  bounds: readonly [number, number],
): void {
  const ny = z.length;
  const nx = z[0].length;
  canvas.width = nx;
  canvas.height = ny;
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.putImageData(new ImageData(heatmapPixels(z, bounds), nx, ny), 0, 0);
}
