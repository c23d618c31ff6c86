/**
 * Surface grid -> three.js geometry, plus the pure grid lookups the views
 * and tests share. Vertex colors follow the same key as the 2-D fallback.
 */

import * as THREE from "three";

import { colorFor } from "./colormap.js";
import type { SurfaceResponse } from "./types.js";

/** index of the grid node closest to zero */
export function nearestIndex(axis: number[], target = 0): number {
  let best = 0;
  for (let i = 1; i < axis.length; i++) {
    if (Math.abs(axis[i] - target) < Math.abs(axis[best] - target)) best = i;
  }
  return best;
}

/** z at the grid node nearest the displacement origin */
export function originValue(surface: SurfaceResponse): number {
  return surface.z[nearestIndex(surface.y)][nearestIndex(surface.x)];
}

/** pointwise difference grid of two equally shaped surfaces */
export function differenceGrid(a: SurfaceResponse, b: SurfaceResponse): number[][] {
  return a.z.map((row, i) => row.map((v, j) => v - b.z[i][j]));
}

export function buildSurfaceGeometry(
  surface: SurfaceResponse,
  bounds: readonly [number, number],
  zScale = 4.0,
): THREE.BufferGeometry {
  const nx = surface.x.length;
  const ny = surface.y.length;
  const span = surface.x[nx - 1] - surface.x[0] || 1;
  const positions = new Float32Array(nx * ny * 3);
  const colors = new Float32Array(nx * ny * 3);
  let k = 0;
  for (let i = 0; i < ny; i++) {
    for (let j = 0; j < nx; j++) {
      const z = surface.z[i][j];
      positions[k] = surface.x[j];
      // z up in data terms; scaled so the unit correlation reads as a
      // fraction of the horizontal span
      positions[k + 1] = z * zScale * (span / 10);
      positions[k + 2] = surface.y[i];
      const [r, g, b] = colorFor(z, bounds);
      colors[k] = r / 255;
      colors[k + 1] = g / 255;
      colors[k + 2] = b / 255;
      k += 3;
    }
  }
  const indices: number[] = [];
  for (let i = 0; i < ny - 1; i++) {
    for (let j = 0; j < nx - 1; j++) {
      const a = i * nx + j;
      const b = a + 1;
      const c = a + nx;
      const d = c + 1;
      indices.push(a, c, b, b, c, d);
    }
  }
  const geom = new THREE.BufferGeometry();
  geom.setAttribute("position", new THREE.BufferAttribute(positions, 3));
  geom.setAttribute("color", new THREE.BufferAttribute(colors, 3));
  geom.setIndex(indices);
  geom.computeVertexNormals();
  return geom;
}
