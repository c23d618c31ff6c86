/**
 * Viridis-style colormap and the color key that always matches the data on
 * screen: the key is anchored to the fetched z range, not a fixed [0, 1],
 * so narrow high-correlation plateaus remain readable.
 */

const STOPS: ReadonlyArray<readonly [number, number, number]> = [
  [68, 1, 84],
  [71, 44, 122],
  [59, 81, 139],
  [44, 113, 142],
  [33, 144, 141],
  [39, 173, 129],
  [92, 200, 99],
  [170, 220, 50],
  [253, 231, 37],
];

export type Rgb = readonly [number, number, number];

/** t in [0, 1] -> interpolated viridis color */
export function colorAt(t: number): Rgb {
  const x = Math.min(1, Math.max(0, t)) * (STOPS.length - 1);
  const i = Math.min(STOPS.length - 2, Math.floor(x));
  const f = x - i;
  const a = STOPS[i];
  const b = STOPS[i + 1];
  return [
    Math.round(a[0] + f * (b[0] - a[0])),
    Math.round(a[1] + f * (b[1] - a[1])),
    Math.round(a[2] + f * (b[2] - a[2])),
  ];
}

/** map a value onto [0, 1] within the key bounds (degenerate range -> 1) */
export function normalize(value: number, bounds: readonly [number, number]): number {
  const [lo, hi] = bounds;
  if (hi <= lo) return 1;
  return (value - lo) / (hi - lo);
}

export function colorFor(value: number, bounds: readonly [number, number]): Rgb {
  return colorAt(normalize(value, bounds));
}

export function cssColor([r, g, b]: Rgb): string {
  return `rgb(${r},${g},${b})`;
}

/** evenly spaced tick labels for the key, hi first (rendered top-down) */
export function keyTicks(bounds: readonly [number, number], n = 5): number[] {
  const [lo, hi] = bounds;
  const ticks: number[] = [];
  for (let i = 0; i < n; i++) ticks.push(hi - ((hi - lo) * i) / (n - 1));
  return ticks;
}
