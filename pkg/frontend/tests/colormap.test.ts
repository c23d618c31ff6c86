import { describe, expect, it } from "vitest";

import { colorAt, colorFor, cssColor, keyTicks, normalize } from "../src/colormap.js";

describe("colormap", () => {
  it("anchors the viridis endpoints", () => {
    expect(colorAt(0)).toEqual([68, 1, 84]);
    expect(colorAt(1)).toEqual([253, 231, 37]);
  });

  it("clamps outside [0, 1]", () => {
    expect(colorAt(-2)).toEqual(colorAt(0));
    expect(colorAt(9)).toEqual(colorAt(1));
  });

  it("normalizes within the key bounds", () => {
    expect(normalize(0.5, [0, 1])).toBe(0.5);
    expect(normalize(0.75, [0.5, 1.0])).toBe(0.5);
  });

  it("treats a flat surface as the top of the key", () => {
    // a constant-1 plateau (huge range, high order) must not divide by zero
    expect(normalize(1.0, [1.0, 1.0])).toBe(1);
    expect(colorFor(1.0, [1.0, 1.0])).toEqual(colorAt(1));
  });

  it("renders css strings", () => {
    expect(cssColor([1, 2, 3])).toBe("rgb(1,2,3)");
  });

  it("builds ticks from the data range, top first", () => {
    const ticks = keyTicks([0.4, 1.0], 4);
    expect(ticks.length).toBe(4);
    [1.0, 0.8, 0.6, 0.4].forEach((want, i) => expect(ticks[i]).toBeCloseTo(want, 12));
  });
});
