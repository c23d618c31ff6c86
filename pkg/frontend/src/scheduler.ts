/**
 * Debounced single-flight fetch scheduling.
 *
 * Contract: a burst of control movements settles into exactly one refetch;
 * at most one request is ever in flight; and a response only lands if it
 * still corresponds to the newest requested state (stale responses are
 * discarded, not rendered).
 */

export interface SchedulerHooks<S, R> {
  /** perform the fetch for a settled state */
  load: (state: S) => Promise<R>;
  /** deliver the accepted (newest) result */
  apply: (state: S, result: R) => void;
  /** deliver a failure for the newest state; older failures are dropped */
  fail?: (state: S, error: unknown) => void;
}

export class FetchScheduler<S, R> {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private generation = 0;
  private inFlight = false;
  private pending: S | null = null;
  private fetchCount = 0;

  constructor(
    private readonly hooks: SchedulerHooks<S, R>,
    private readonly debounceMs = 150,
  ) {}

  /** total number of fetches started (for tests and diagnostics) */
  get started(): number {
    return this.fetchCount;
  }

  /** called on every control movement */
  request(state: S): void {
    this.pending = state;
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      this.launch();
    }, this.debounceMs);
  }

  /** run now, skipping the debounce (initial render) */
  flush(state: S): void {
    this.pending = state;
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.launch();
  }

  private launch(): void {
    if (this.inFlight || this.pending === null) return;
    const state = this.pending;
    this.pending = null;
    const gen = ++this.generation;
    this.inFlight = true;
    this.fetchCount += 1;
    this.hooks.load(state).then(
      (result) => this.settle(gen, state, () => this.hooks.apply(state, result)),
      (error) => this.settle(gen, state, () => this.hooks.fail?.(state, error)),
    );
  }

  private settle(gen: number, _state: S, deliver: () => void): void {
    this.inFlight = false;
    if (gen === this.generation && this.pending === null) {
      // newest settled state: show it
      deliver();
    }
    // a newer state queued up while we were away: fetch it now
    if (this.pending !== null) this.launch();
  }
}
