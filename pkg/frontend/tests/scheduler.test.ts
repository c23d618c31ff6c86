import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { FetchScheduler } from "../src/scheduler.js";

interface Deferred<T> {
  promise: Promise<T>;
  resolve: (value: T) => void;
  reject: (err: unknown) => void;
}

function deferred<T>(): Deferred<T> {
  let resolve!: (value: T) => void;
  let reject!: (err: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}

describe("FetchScheduler", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("settles a burst of control movements into exactly one fetch", async () => {
    const applied: number[] = [];
    const scheduler = new FetchScheduler<number, string>(
      {
        load: async (s) => `surface-${s}`,
        apply: (s) => applied.push(s),
      },
      100,
    );
    for (let i = 1; i <= 8; i++) {
      scheduler.request(i);
      await vi.advanceTimersByTimeAsync(30); // below the 100ms debounce
    }
    expect(scheduler.started).toBe(0); // nothing launched mid-burst
    await vi.advanceTimersByTimeAsync(150);
    expect(scheduler.started).toBe(1);
    expect(applied).toEqual([8]); // the last settled value, nothing else
  });

  it("keeps at most one request in flight and refetches the newest state", async () => {
    const gates: Deferred<string>[] = [];
    const applied: Array<[number, string]> = [];
    const scheduler = new FetchScheduler<number, string>(
      {
        load: (s) => {
          const gate = deferred<string>();
          gates.push(gate);
          return gate.promise.then((v) => `${v}-${s}`);
        },
        apply: (s, r) => applied.push([s, r]),
      },
      50,
    );
    scheduler.request(1);
    await vi.advanceTimersByTimeAsync(60);
    expect(scheduler.started).toBe(1);

    // two more movements while request 1 is still in flight
    scheduler.request(2);
    await vi.advanceTimersByTimeAsync(60);
    scheduler.request(3);
    await vi.advanceTimersByTimeAsync(60);
    expect(scheduler.started).toBe(1); // still only the first one

    gates[0].resolve("a");
    await vi.advanceTimersByTimeAsync(1);
    expect(scheduler.started).toBe(2); // newest state launched immediately
    gates[1].resolve("b");
    await vi.advanceTimersByTimeAsync(1);

    // the stale response for state 1 was discarded, state 3 was rendered
    expect(applied).toEqual([[3, "b-3"]]);
  });

  it("reports failures for the newest state and preserves flow", async () => {
    const failures: number[] = [];
    const applied: number[] = [];
    let shouldFail = true;
    const scheduler = new FetchScheduler<number, string>(
      {
        load: async (s) => {
          if (shouldFail) throw new Error("down");
          return `ok-${s}`;
        },
        apply: (s) => applied.push(s),
        fail: (s) => failures.push(s),
      },
      10,
    );
    scheduler.request(1);
    await vi.advanceTimersByTimeAsync(20);
    expect(failures).toEqual([1]);

    shouldFail = false;
    scheduler.request(2);
    await vi.advanceTimersByTimeAsync(20);
    expect(applied).toEqual([2]);
  });

  it("flush skips the debounce for the initial render", async () => {
    const scheduler = new FetchScheduler<number, string>(
      { load: async (s) => String(s), apply: () => {} },
      5000,
    );
    scheduler.flush(7);
    expect(scheduler.started).toBe(1);
  });
});
