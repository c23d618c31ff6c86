/**
 * Explorer state: two log-scaled sliders, a parametrization choice, and the
 * swap toggle. Both slider ranges cover three orders of magnitude, so the
 * sliders work on a [0, 1] track mapped exponentially onto the value range.
 */

import type { SurfaceResponse, SwapDiffResponse } from "./types.js";

export const NU_RANGE: readonly [number, number] = [0.1, 50];
export const SCALE_RANGE: readonly [number, number] = [0.1, 100];

export const PARAMETRIZATIONS = [
  "range",
  "decay",
  "ml_length_scale",
  "handcock_stein",
] as const;
export type Parametrization = (typeof PARAMETRIZATIONS)[number];

export interface ExplorerState {
  nu: number;
  scale: number;
  parametrization: Parametrization;
  swapMode: boolean;
}

export interface FetchedView {
  /** last surface shown in plain mode */
  surface: SurfaceResponse | null;
  /** last swap payload shown in swap mode */
  swap: SwapDiffResponse | null;
  /** color key bounds of whatever is currently displayed */
  colorBounds: readonly [number, number] | null;
  /** most recent backend failure, cleared by the next success */
  error: string | null;
}

export function clamp(value: number, [lo, hi]: readonly [number, number]): number {
  return Math.min(hi, Math.max(lo, value));
}

/** slider track position in [0, 1] -> value on a log scale */
export function sliderToValue(pos: number, range: readonly [number, number]): number {
  const p = clamp(pos, [0, 1]);
  return range[0] * Math.pow(range[1] / range[0], p);
}

/** value -> slider track position in [0, 1] */
export function valueToSlider(value: number, range: readonly [number, number]): number {
  const v = clamp(value, range);
  return Math.log(v / range[0]) / Math.log(range[1] / range[0]);
}

export function initialState(): ExplorerState {
  return { nu: 1.5, scale: 1.0, parametrization: "range", swapMode: false };
}

export function withNu(state: ExplorerState, nu: number): ExplorerState {
  return { ...state, nu: clamp(nu, NU_RANGE) };
}

export function withScale(state: ExplorerState, scale: number): ExplorerState {
  return { ...state, scale: clamp(scale, SCALE_RANGE) };
}

export function withParametrization(
  state: ExplorerState,
  parametrization: Parametrization,
): ExplorerState {
  return { ...state, parametrization };
}

export function withSwapMode(state: ExplorerState, swapMode: boolean): ExplorerState {
  return { ...state, swapMode };
}

/** the color key must always describe the data actually on screen */
export function colorBoundsOf(z: number[][]): readonly [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const row of z) {
    for (const v of row) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  return [lo, hi];
}
