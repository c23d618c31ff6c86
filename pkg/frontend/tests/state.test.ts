import { describe, expect, it } from "vitest";

import {
  NU_RANGE,
  SCALE_RANGE,
  colorBoundsOf,
  initialState,
  sliderToValue,
  valueToSlider,
  withNu,
  withScale,
  withSwapMode,
} from "../src/state.js";

describe("log slider mapping", () => {
  it("hits the endpoints", () => {
    expect(sliderToValue(0, NU_RANGE)).toBeCloseTo(0.1, 12);
    expect(sliderToValue(1, NU_RANGE)).toBeCloseTo(50, 12);
    expect(sliderToValue(0, SCALE_RANGE)).toBeCloseTo(0.1, 12);
    expect(sliderToValue(1, SCALE_RANGE)).toBeCloseTo(100, 12);
  });

  it("is monotone and log-spaced", () => {
    // the track midpoint lands on the geometric mean of the range
    const mid = sliderToValue(0.5, SCALE_RANGE);
    expect(mid).toBeCloseTo(Math.sqrt(0.1 * 100), 10);
    let prev = -Infinity;
    for (let p = 0; p <= 1.0001; p += 0.05) {
      const v = sliderToValue(p, NU_RANGE);
      expect(v).toBeGreaterThan(prev);
      prev = v;
    }
  });

  it("round-trips with valueToSlider", () => {
    for (const v of [0.1, 0.5, 1.5, 10, 50]) {
      expect(sliderToValue(valueToSlider(v, NU_RANGE), NU_RANGE)).toBeCloseTo(v, 10);
    }
  });

  it("clamps out-of-range positions and values", () => {
    expect(sliderToValue(-3, NU_RANGE)).toBeCloseTo(0.1, 12);
    expect(sliderToValue(7, NU_RANGE)).toBeCloseTo(50, 12);
    expect(valueToSlider(1e9, SCALE_RANGE)).toBe(1);
    expect(valueToSlider(0, SCALE_RANGE)).toBe(0);
  });
});

describe("state transitions", () => {
  it("keeps sliders inside their configured ranges", () => {
    const s = initialState();
    expect(withNu(s, 1e6).nu).toBe(50);
    expect(withNu(s, 0).nu).toBe(0.1);
    expect(withScale(s, 1e6).scale).toBe(100);
    expect(withScale(s, -1).scale).toBe(0.1);
  });

  it("toggles swap mode without touching the sliders", () => {
    const s = withSwapMode(withNu(initialState(), 5), true);
    expect(s.swapMode).toBe(true);
    expect(s.nu).toBe(5);
  });
});

describe("color bounds", () => {
  it("spans exactly the fetched z values", () => {
    const bounds = colorBoundsOf([
      [0.2, 0.9],
      [0.4, 1.0],
    ]);
    expect(bounds).toEqual([0.2, 1.0]);
  });
});
