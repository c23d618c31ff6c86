/**
 * Thin typed client for the backend endpoints. All math stays server-side;
 * this module only builds query strings and decodes JSON.
 */

import type { ExplorerState } from "./state.js";
import type { ErrorBody, SurfaceResponse, SwapDiffResponse } from "./types.js";

export class BackendError extends Error {
  constructor(
    message: string,
    readonly status: number,
  ) {
    super(message);
  }
}

export interface ApiOptions {
  baseUrl?: string;
  resolution?: number;
  halfWidth?: number;
  fetchFn?: typeof fetch;
}

const DEFAULT_BASE = "http://127.0.0.1:8571";

export function surfaceUrl(state: ExplorerState, opts: ApiOptions = {}): string {
  const base = opts.baseUrl ?? DEFAULT_BASE;
  const q = new URLSearchParams({
    nu: String(state.nu),
    scale: String(state.scale),
    param: state.parametrization,
  });
  if (opts.resolution !== undefined) q.set("resolution", String(opts.resolution));
  if (opts.halfWidth !== undefined) q.set("half_width", String(opts.halfWidth));
  return `${base}/surface?${q.toString()}`;
}

export function swapDiffUrl(state: ExplorerState, opts: ApiOptions = {}): string {
  const base = opts.baseUrl ?? DEFAULT_BASE;
  const q = new URLSearchParams({
    nu: String(state.nu),
    rho: String(state.scale),
  });
  if (opts.resolution !== undefined) q.set("resolution", String(opts.resolution));
  if (opts.halfWidth !== undefined) q.set("half_width", String(opts.halfWidth));
  return `${base}/swapdiff?${q.toString()}`;
}

async function getJson<T>(url: string, fetchFn: typeof fetch): Promise<T> {
  let response: Response;
  try {
    response = await fetchFn(url);
  } catch (err) {
    throw new BackendError(`backend unreachable: ${String(err)}`, 0);
  }
  if (!response.ok) {
    let detail = response.statusText;
    try {
      detail = ((await response.json()) as ErrorBody).error ?? detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new BackendError(detail, response.status);
  }
  return (await response.json()) as T;
}

export function fetchSurface(
  state: ExplorerState,
  opts: ApiOptions = {},
): Promise<SurfaceResponse> {
  return getJson<SurfaceResponse>(surfaceUrl(state, opts), opts.fetchFn ?? fetch);
}

export function fetchSwapDiff(
  state: ExplorerState,
  opts: ApiOptions = {},
): Promise<SwapDiffResponse> {
  return getJson<SwapDiffResponse>(swapDiffUrl(state, opts), opts.fetchFn ?? fetch);
}
