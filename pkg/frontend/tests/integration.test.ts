/**
 * Integration against the live backend spawned by globalSetup: the explorer
 * acceptance checks run against real endpoints, not fixtures.
 */

import { describe, expect, it } from "vitest";

import { fetchSurface, fetchSwapDiff } from "../src/api.js";
import { originValue } from "../src/geometry.js";
import { FetchScheduler } from "../src/scheduler.js";
import { colorBoundsOf, initialState, withNu, withScale, withSwapMode } from "../src/state.js";
import type { ExplorerState } from "../src/state.js";
import type { SurfaceResponse, SwapDiffResponse } from "../src/types.js";
import { BACKEND_URL } from "./backend.js";

const opts = { baseUrl: BACKEND_URL, resolution: 41 };

describe("surface fetch", () => {
  it("renders value 1 at the origin cell", async () => {
    const surface = await fetchSurface({ ...initialState(), nu: 0.5, scale: 1 }, opts);
    expect(originValue(surface)).toBe(1.0);
    const bounds = colorBoundsOf(surface.z);
    expect(bounds[1]).toBe(1.0);
    expect(bounds[0]).toBeGreaterThan(0.0);
  });

  it("maps invalid orders to a machine-readable 400", async () => {
    const bad = { ...initialState(), nu: 0 } as ExplorerState;
    await expect(fetchSurface(bad, opts)).rejects.toMatchObject({ status: 400 });
  });
});

describe("swap view for (5, 40)", () => {
  it("displays two surfaces with extremes straight from /swapdiff", async () => {
    const state = withSwapMode(withScale(withNu(initialState(), 5), 40), true);
    const swap = await fetchSwapDiff(state, opts);

    // two full surfaces, same grid, origin cell 1 on both
    expect(swap.surface.z.length).toBe(41);
    expect(swap.surface_swapped.z.length).toBe(41);
    expect(originValue(swap.surface)).toBe(1.0);
    expect(originValue(swap.surface_swapped)).toBe(1.0);
    expect(swap.surface.params.nu).toBe(5);
    expect(swap.surface_swapped.params.nu).toBe(40);

    // the difference extremes come from the endpoint, and for this pair the
    // two surfaces are near-identical
    expect(swap.min_diff).toBeLessThanOrEqual(swap.max_diff);
    expect(Math.abs(swap.max_diff)).toBeLessThan(0.05);

    // byte-for-byte what a direct endpoint call reports
    const raw = (await (
      await fetch(`${BACKEND_URL}/swapdiff?nu=5&rho=40&resolution=41`)
    ).json()) as SwapDiffResponse;
    expect(swap.min_diff).toBe(raw.min_diff);
    expect(swap.max_diff).toBe(raw.max_diff);
  });
});

describe("debounced refetch against the live backend", () => {
  it("a slider burst triggers exactly one settled refetch", async () => {
    const applied: Array<[ExplorerState, SurfaceResponse]> = [];
    const scheduler = new FetchScheduler<ExplorerState, SurfaceResponse>(
      {
        load: (s) => fetchSurface(s, opts),
        apply: (s, r) => applied.push([s, r]),
      },
      40,
    );
    let state = initialState();
    for (const nu of [0.3, 0.8, 1.7, 4.2, 9.9]) {
      state = withNu(state, nu);
      scheduler.request(state);
      await new Promise((r) => setTimeout(r, 10)); // below the debounce
    }
    await new Promise((r) => setTimeout(r, 400)); // let it settle
    expect(scheduler.started).toBe(1);
    expect(applied.length).toBe(1);
    expect(applied[0][0].nu).toBeCloseTo(9.9, 12);
    expect(applied[0][1].params.nu).toBeCloseTo(9.9, 12);
    expect(originValue(applied[0][1])).toBe(1.0);
  });

  it("keeps the previous view on failure and recovers on the next fetch", async () => {
    const failures: unknown[] = [];
    const applied: SurfaceResponse[] = [];
    const scheduler = new FetchScheduler<ExplorerState, SurfaceResponse>(
      {
        load: (s) =>
          fetchSurface(s, {
            ...opts,
            // first request goes to a dead port, the second to the real one
            baseUrl: failures.length === 0 ? "http://127.0.0.1:1" : BACKEND_URL,
          }),
        apply: (_s, r) => applied.push(r),
        fail: (_s, e) => failures.push(e),
      },
      10,
    );
    scheduler.request(initialState());
    await new Promise((r) => setTimeout(r, 300));
    expect(failures.length).toBe(1);
    expect(applied.length).toBe(0);

    scheduler.request(withNu(initialState(), 2.0));
    await new Promise((r) => setTimeout(r, 400));
    expect(applied.length).toBe(1);
  });
});
