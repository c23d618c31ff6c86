/** Wire formats of the maternkit backend (JSON bodies, field for field). */

export interface SurfaceParams {
  nu: number;
  scale: number;
  sigma2: number;
  parametrization: string;
  dim: number;
}

export interface SurfaceResponse {
  x: number[];
  y: number[];
  z: number[][];
  params: SurfaceParams;
}

export interface SwapDiffResponse {
  nu: number;
  rho: number;
  min_diff: number;
  max_diff: number;
  surface: SurfaceResponse;
  surface_swapped: SurfaceResponse;
  surface_min_diff: number;
  surface_max_diff: number;
}

export interface ErrorBody {
  error: string;
}
